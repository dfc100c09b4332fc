import { inflateSync } from 'node:zlib';

import { describe, expect, it } from 'vitest';

import type { GridJson } from '../src/api.js';
import { encodePng, gridToPng, rasterizeGrid } from '../src/png.js';

const GRID: GridJson = {
  title: 'probe values',
  rows: ['time'],
  cols: ['workload: ordered', 'workload: random'],
  cells: [[['218'], { error: 'division by zero' }]],
  excluded: [],
  pivot: null,
};

function readU32(bytes: Uint8Array, at: number): number {
  return (
    ((bytes[at] << 24) |
      (bytes[at + 1] << 16) |
      (bytes[at + 2] << 8) |
      bytes[at + 3]) >>>
    0
  );
}

describe('grid rasterization', () => {
  it('produces a raster sized to the table', () => {
    const raster = rasterizeGrid(GRID);
    expect(raster.width).toBeGreaterThan(0);
    expect(raster.height).toBeGreaterThan(0);
    expect(raster.pixels.length).toBe(raster.width * raster.height * 4);
    // not blank: some pixel is non-white
    const nonWhite = raster.pixels.some(
      (byte, i) => i % 4 !== 3 && byte !== 255,
    );
    expect(nonWhite).toBe(true);
  });
});

describe('png encoding', () => {
  it('emits a nonempty, well-formed PNG', () => {
    const bytes = gridToPng(GRID);
    expect(bytes.length).toBeGreaterThan(100);
    expect([...bytes.slice(0, 8)]).toEqual([
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a,
    ]);
    // IHDR dimensions match the raster
    const raster = rasterizeGrid(GRID);
    expect(readU32(bytes, 16)).toBe(raster.width);
    expect(readU32(bytes, 20)).toBe(raster.height);
  });

  it('stores pixel data that inflates to the exact filtered size', () => {
    const raster = rasterizeGrid(GRID);
    const bytes = encodePng(raster);
    // first chunk after the 8-byte signature is IHDR (25 bytes total)
    const idatLength = readU32(bytes, 33);
    const type = String.fromCharCode(...bytes.slice(37, 41));
    expect(type).toBe('IDAT');
    const idat = bytes.slice(41, 41 + idatLength);
    const inflated = inflateSync(Buffer.from(idat));
    expect(inflated.length).toBe((raster.width * 4 + 1) * raster.height);
  });
});
