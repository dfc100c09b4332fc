// @vitest-environment jsdom
//
// The full interaction loop, driven through the DOM views against a real
// backend: add a variation on a selection, disable an alternative, apply
// a grid column, and export the grid as a PNG.

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { Client } from '../src/api.js';
import { EditorView } from '../src/editor.js';
import { GridView } from '../src/grid.js';
import { HistoryView } from '../src/history.js';
import { startServer, TestServer, waitFor } from './helpers.js';

const PROGRAM = [
  'example "main" {',
  '  let base = __variation("v1", 0, "base",' +
    ' __alt("10", false, { 10 }), __alt("20", false, { 20 }),' +
    ' __alt("30", false, { 30 }));',
  '  __probe("p1", base + 0.5)',
  '}',
  '',
].join('\n');

let server: TestServer;
let client: Client;

function button(root: HTMLElement, label: string): HTMLButtonElement {
  const found = [...root.querySelectorAll('button')].find(
    (b) => b.textContent === label,
  );
  if (!found) throw new Error(`no button labelled '${label}'`);
  return found;
}

beforeAll(async () => {
  server = await startServer(PROGRAM);
  client = new Client(server.url);
}, 30000);

afterAll(() => {
  server.stop();
});

describe('editor view', () => {
  it('adding a variation on a selection shows a two-alternative widget',
    async () => {
      const editor = new EditorView(client, document);
      document.body.append(editor.root);
      await editor.refresh();

      const textarea = editor.root.querySelector('textarea')!;
      const start = textarea.value.indexOf('0.5');
      textarea.selectionStart = start;
      textarea.selectionEnd = start + '0.5'.length;
      button(editor.root, 'Add variation').click();

      const widget = await waitFor(() => {
        const widgets = editor.root.querySelectorAll('.variation-widget');
        if (widgets.length !== 2) throw new Error('widget not rendered yet');
        return widgets[1];
      });
      expect(widget.querySelectorAll('.alt-tab')).toHaveLength(2);
      const names = [...widget.querySelectorAll('.alt-pick')].map(
        (b) => b.textContent,
      );
      expect(names).toEqual(['0.5', '0.5']); // two identical alternatives
      editor.root.remove();
    });

  it('shows inline probe values for the active universe', async () => {
    const editor = new EditorView(client, document);
    document.body.append(editor.root);
    await editor.refresh();
    editor.setReport(await client.run());
    const badge = editor.root.querySelector('.probe-badge')!;
    expect(badge.textContent).toContain('p1: 10.5');
    editor.root.remove();
  });
});

describe('grid view', () => {
  it('disabling an alternative drops the column count by the predicted ' +
    'amount', async () => {
      const grid = new GridView(client, document);
      document.body.append(grid.root);
      await client.run();
      await grid.refresh();
      const columnCount = () =>
        grid.root.querySelectorAll('tr:first-child th').length - 1;
      const columnsBefore = columnCount();
      // v1 has 3 alternatives and the added vp has 2: 6 universes; with
      // one v1 alternative disabled, 2 * 2 = 4 remain.
      expect(columnsBefore).toBe(6);

      await client.setDisabled('v1', 2, true);
      await client.run();
      await grid.refresh();
      expect(columnCount()).toBe(4);
      grid.root.remove();
    });

  it('Apply on a grid column switches the inline probe values', async () => {
    const editor = new EditorView(client, document);
    const grid = new GridView(client, document);
    document.body.append(editor.root, grid.root);
    grid.onApplied = () => {
      /* re-run handled explicitly below */
    };
    await client.run();
    await grid.refresh();
    await editor.refresh();

    // apply the universe of the last column ("base: 20, …")
    const applies = [...grid.root.querySelectorAll('.apply-universe')];
    expect(applies.length).toBe(4);
    (applies[applies.length - 1] as HTMLButtonElement).click();

    await waitFor(async () => {
      editor.setReport(await client.run());
      const badge = editor.root.querySelector('.probe-badge')!;
      return badge.textContent?.includes('p1: 20.5') ?? false;
    });
    editor.root.remove();
    grid.root.remove();
  });

  it('Save-as-PNG export produces a nonempty raster', async () => {
    const grid = new GridView(client, document);
    document.body.append(grid.root);
    await client.run();
    await grid.refresh();
    const bytes = grid.exportPng();
    expect(bytes).not.toBeNull();
    expect(bytes!.length).toBeGreaterThan(100);
    expect([...bytes!.slice(0, 8)]).toEqual([
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a,
    ]);
    grid.root.remove();
  });
});

describe('history view', () => {
  it('lists snapshots newest-first and restores', async () => {
    await client.putProgram(PROGRAM); // guarantee at least one snapshot
    const history = new HistoryView(client, document);
    document.body.append(history.root);
    await history.refresh();
    const entries = [...history.root.querySelectorAll('.history-entry')];
    expect(entries.length).toBeGreaterThan(0);
    const indices = entries.map((e) =>
      Number((e as HTMLElement).dataset.index),
    );
    expect(indices).toEqual([...indices].sort((a, b) => b - a));

    const before = entries.length;
    (entries[entries.length - 1].querySelector(
      '.restore',
    ) as HTMLButtonElement).click();
    await waitFor(
      () =>
        history.root.querySelectorAll('.history-entry').length === before + 1,
    );
    const { source } = await client.getProgram();
    expect(source).toBe(PROGRAM);
  });
});
