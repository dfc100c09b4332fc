/** Client-side rasterization of the grid into a PNG.
 *
 * Deliberately avoids <canvas> so the export is byte-deterministic and
 * testable outside a real browser: cells are drawn with a small built-in
 * bitmap font into an RGBA buffer, which is then wrapped in a PNG using
 * stored (uncompressed) deflate blocks.
 */

import type { GridJson } from './api.js';

// 5x7 glyphs, one hex string per row, for the characters grids contain.
const GLYPHS: Record<string, number[]> = {
  '0': [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  '1': [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  '2': [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  '3': [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  '4': [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  '5': [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  '6': [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  '7': [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  '8': [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  '9': [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  '.': [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  '-': [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  ',': [0x00, 0x00, 0x00, 0x00, 0x0c, 0x04, 0x08],
  ':': [0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00],
  ' ': [0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00],
};
// Letters render as a filled block outline so labels stay legible enough
// without shipping a full font.
const LETTER = [0x0e, 0x11, 0x11, 0x1f, 0x11, 0x11, 0x11];

const CELL_W = 6; // glyph width incl. spacing
const CELL_H = 10;
const PAD = 4;

interface Raster {
  width: number;
  height: number;
  pixels: Uint8Array; // RGBA
}

function drawText(
  raster: Raster,
  x: number,
  y: number,
  text: string,
  rgb: [number, number, number],
): void {
  for (let c = 0; c < text.length; c += 1) {
    const glyph = GLYPHS[text[c]] ?? LETTER;
    for (let row = 0; row < 7; row += 1) {
      for (let col = 0; col < 5; col += 1) {
        if ((glyph[row] >> (4 - col)) & 1) {
          const px = x + c * CELL_W + col;
          const py = y + row;
          if (px < raster.width && py < raster.height) {
            const at = (py * raster.width + px) * 4;
            raster.pixels[at] = rgb[0];
            raster.pixels[at + 1] = rgb[1];
            raster.pixels[at + 2] = rgb[2];
            raster.pixels[at + 3] = 255;
          }
        }
      }
    }
  }
}

function cellText(cell: GridJson['cells'][number][number]): string {
  if (cell === null) return '-';
  if (Array.isArray(cell)) return cell.join(', ');
  return `error: ${cell.error}`;
}

export function rasterizeGrid(grid: GridJson): Raster {
  const table: string[][] = [
    ['', ...grid.cols],
    ...grid.rows.map((row, r) => [
      row,
      ...grid.cols.map((_, c) => cellText(grid.cells[r][c])),
    ]),
  ];
  const colWidths = table[0].map((_, c) =>
    Math.max(...table.map((row) => row[c].length)),
  );
  const width =
    PAD * 2 + colWidths.reduce((sum, w) => sum + w * CELL_W + PAD, 0);
  const height = PAD * 2 + table.length * CELL_H;
  const pixels = new Uint8Array(width * height * 4);
  for (let i = 0; i < pixels.length; i += 4) {
    pixels[i] = 255;
    pixels[i + 1] = 255;
    pixels[i + 2] = 255;
    pixels[i + 3] = 255;
  }
  const raster: Raster = { width, height, pixels };
  for (let r = 0; r < table.length; r += 1) {
    let x = PAD;
    for (let c = 0; c < table[r].length; c += 1) {
      const color: [number, number, number] =
        r === 0 || c === 0 ? [60, 60, 160] : [20, 20, 20];
      drawText(raster, x, PAD + r * CELL_H, table[r][c], color);
      x += colWidths[c] * CELL_W + PAD;
    }
  }
  return raster;
}

// --- PNG encoding (stored deflate, no external compressor) ---

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n += 1) {
    let c = n;
    for (let k = 0; k < 8; k += 1) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c;
  }
  return table;
})();

function crc32(bytes: Uint8Array): number {
  let crc = 0xffffffff;
  for (const b of bytes) {
    crc = CRC_TABLE[(crc ^ b) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function adler32(bytes: Uint8Array): number {
  let a = 1;
  let b = 0;
  for (const byte of bytes) {
    a = (a + byte) % 65521;
    b = (b + a) % 65521;
  }
  return ((b << 16) | a) >>> 0;
}

function u32(value: number): Uint8Array {
  return new Uint8Array([
    (value >>> 24) & 0xff,
    (value >>> 16) & 0xff,
    (value >>> 8) & 0xff,
    value & 0xff,
  ]);
}

function chunk(type: string, data: Uint8Array): Uint8Array {
  const body = new Uint8Array(4 + data.length);
  body.set([...type].map((ch) => ch.charCodeAt(0)));
  body.set(data, 4);
  const out = new Uint8Array(8 + data.length + 4);
  out.set(u32(data.length));
  out.set(body, 4);
  out.set(u32(crc32(body)), 8 + data.length);
  return out;
}

/** zlib stream made of stored (uncompressed) deflate blocks. */
function zlibStored(data: Uint8Array): Uint8Array {
  const blocks: Uint8Array[] = [new Uint8Array([0x78, 0x01])];
  const MAX = 65535;
  for (let at = 0; at < data.length || at === 0; at += MAX) {
    const slice = data.subarray(at, Math.min(at + MAX, data.length));
    const last = at + MAX >= data.length ? 1 : 0;
    const header = new Uint8Array([
      last,
      slice.length & 0xff,
      slice.length >>> 8,
      ~slice.length & 0xff,
      (~slice.length >>> 8) & 0xff,
    ]);
    blocks.push(header, slice);
    if (data.length === 0) break;
  }
  blocks.push(u32(adler32(data)));
  const total = blocks.reduce((sum, b) => sum + b.length, 0);
  const out = new Uint8Array(total);
  let offset = 0;
  for (const block of blocks) {
    out.set(block, offset);
    offset += block.length;
  }
  return out;
}

export function encodePng(raster: Raster): Uint8Array {
  const { width, height, pixels } = raster;
  const stride = width * 4;
  const filtered = new Uint8Array((stride + 1) * height);
  for (let y = 0; y < height; y += 1) {
    filtered[y * (stride + 1)] = 0; // filter type: none
    filtered.set(
      pixels.subarray(y * stride, (y + 1) * stride),
      y * (stride + 1) + 1,
    );
  }
  const ihdr = new Uint8Array(13);
  ihdr.set(u32(width));
  ihdr.set(u32(height), 4);
  ihdr.set([8, 6, 0, 0, 0], 8); // 8-bit RGBA
  const parts = [
    new Uint8Array([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk('IHDR', ihdr),
    chunk('IDAT', zlibStored(filtered)),
    chunk('IEND', new Uint8Array(0)),
  ];
  const total = parts.reduce((sum, p) => sum + p.length, 0);
  const out = new Uint8Array(total);
  let offset = 0;
  for (const part of parts) {
    out.set(part, offset);
    offset += part.length;
  }
  return out;
}

export function gridToPng(grid: GridJson): Uint8Array {
  return encodePng(rasterizeGrid(grid));
}
