import { describe, expect, it } from 'vitest';

import { toByteSpan } from '../src/editor.js';
import { topLevelVariationIds } from '../src/grid.js';
import { lineDiff } from '../src/history.js';
import { findProbes, findVariations } from '../src/markers.js';

const SOURCE = [
  'example "main" {',
  '  let x = __variation("v1", 1, "speed",' +
    ' __alt("fast", false, { 1 }), __alt("slow, but ok", true, { 2 + 3 }));',
  '  __probe("p1", x + __variation("v2", 0, "",' +
    ' __alt("a", false, { 10 }), __alt("b", false, { 20 })))',
  '}',
].join('\n');

describe('marker span finding', () => {
  it('finds both variations with names, flags, and bodies', () => {
    const vps = findVariations(SOURCE);
    expect(vps.map((vp) => vp.id)).toEqual(['v1', 'v2']);
    expect(vps[0].name).toBe('speed');
    expect(vps[0].activeIndex).toBe(1);
    expect(vps[0].alternatives).toEqual([
      { name: 'fast', disabled: false, bodyText: '1' },
      { name: 'slow, but ok', disabled: true, bodyText: '2 + 3' },
    ]);
    expect(SOURCE.slice(vps[1].start, vps[1].end)).toMatch(
      /^__variation\("v2".*\)$/,
    );
  });

  it('finds probes with their full spans', () => {
    const probes = findProbes(SOURCE);
    expect(probes).toHaveLength(1);
    expect(probes[0].id).toBe('p1');
    const text = SOURCE.slice(probes[0].start, probes[0].end);
    expect(text.startsWith('__probe("p1"')).toBe(true);
    expect(text.endsWith('))')).toBe(true);
  });

  it('returns nothing on marker-free source', () => {
    expect(findVariations('let x = 1;')).toEqual([]);
    expect(findProbes('let x = 1;')).toEqual([]);
  });
});

describe('byte spans', () => {
  it('matches character offsets on ASCII', () => {
    expect(toByteSpan('let x = 1;', 4, 5)).toEqual({ start: 4, end: 5 });
  });

  it('accounts for multi-byte characters', () => {
    // "é" is two bytes in UTF-8
    expect(toByteSpan('// é\nlet x = 1;', 9, 10)).toEqual({
      start: 10,
      end: 11,
    });
  });
});

describe('pivot candidates', () => {
  it('keeps only variations present in every universe', () => {
    const ids = topLevelVariationIds([
      { index: 0, label: 'a', assignment: { v1: 0, v2: 0 } },
      { index: 1, label: 'b', assignment: { v1: 1 } },
    ]);
    expect(ids).toEqual(['v1']);
  });

  it('is empty without universes', () => {
    expect(topLevelVariationIds([])).toEqual([]);
  });
});

describe('line diff', () => {
  it('reports added and removed lines', () => {
    const diff = lineDiff('a\nb\nc', 'a\nc\nd');
    expect(diff.added).toEqual(['d']);
    expect(diff.removed).toEqual(['b']);
  });

  it('is empty for identical sources', () => {
    expect(lineDiff('x\ny', 'x\ny')).toEqual({ added: [], removed: [] });
  });
});
