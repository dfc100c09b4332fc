/** Locate marker calls in the program text so the editor can overlay
 * widgets on them. This is purely lexical span-finding for rendering;
 * all semantic data (names, labels, grid content) comes from the server.
 */

export interface AltView {
  name: string;
  disabled: boolean;
  bodyText: string;
}

export interface VariationView {
  id: string;
  name: string;
  activeIndex: number;
  alternatives: AltView[];
  start: number;
  end: number;
}

export interface ProbeView {
  id: string;
  start: number;
  end: number;
}

const STRING = /^"(?:[^"\\]|\\.)*"/;

function unquote(literal: string): string {
  return JSON.parse(literal) as string;
}

/** Index just past the matching close of the bracket at `open`. */
function matchBracket(source: string, open: number): number {
  const pairs: Record<string, string> = { '(': ')', '{': '}', '[': ']' };
  const close = pairs[source[open]];
  let depth = 0;
  let i = open;
  while (i < source.length) {
    const ch = source[i];
    if (ch === '"') {
      const rest = STRING.exec(source.slice(i));
      i += rest ? rest[0].length : 1;
      continue;
    }
    if (ch in pairs) depth += 1;
    else if (ch === ')' || ch === '}' || ch === ']') {
      depth -= 1;
      if (depth === 0 && ch === close) return i + 1;
    }
    i += 1;
  }
  return source.length;
}

/** Split a call's argument text at top-level commas. */
function splitArgs(text: string): string[] {
  const parts: string[] = [];
  let depth = 0;
  let start = 0;
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (ch === '"') {
      const rest = STRING.exec(text.slice(i));
      i += rest ? rest[0].length : 1;
      continue;
    }
    if (ch === '(' || ch === '{' || ch === '[') depth += 1;
    else if (ch === ')' || ch === '}' || ch === ']') depth -= 1;
    else if (ch === ',' && depth === 0) {
      parts.push(text.slice(start, i).trim());
      start = i + 1;
    }
    i += 1;
  }
  parts.push(text.slice(start).trim());
  return parts;
}

function parseAlt(text: string): AltView | null {
  if (!text.startsWith('__alt(')) return null;
  const args = splitArgs(text.slice('__alt('.length, -1));
  if (args.length < 3) return null;
  const body = args.slice(2).join(', ');
  return {
    name: unquote(args[0]),
    disabled: args[1] === 'true',
    bodyText: body.replace(/^\{\s*/, '').replace(/\s*\}$/, ''),
  };
}

export function findVariations(source: string): VariationView[] {
  const views: VariationView[] = [];
  const pattern = /__variation\(/g;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(source)) !== null) {
    const open = match.index + match[0].length - 1;
    const end = matchBracket(source, open);
    const args = splitArgs(source.slice(open + 1, end - 1));
    if (args.length < 5) continue;
    const alternatives = args
      .slice(3)
      .map(parseAlt)
      .filter((alt): alt is AltView => alt !== null);
    views.push({
      id: unquote(args[0]),
      activeIndex: Number(args[1]),
      name: unquote(args[2]),
      alternatives,
      start: match.index,
      end,
    });
  }
  return views;
}

export function findProbes(source: string): ProbeView[] {
  const views: ProbeView[] = [];
  const pattern = /__probe\(/g;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(source)) !== null) {
    const open = match.index + match[0].length - 1;
    const end = matchBracket(source, open);
    const args = splitArgs(source.slice(open + 1, end - 1));
    if (args.length < 2) continue;
    views.push({ id: unquote(args[0]), start: match.index, end });
  }
  return views;
}
