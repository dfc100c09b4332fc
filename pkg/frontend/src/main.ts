/** Wires the three views to one server session and keeps them fresh by
 * re-fetching on /events notifications.
 */

import { Client, RunReport } from './api.js';
import { EditorView } from './editor.js';
import { GridView } from './grid.js';
import { HistoryView } from './history.js';

export interface App {
  editor: EditorView;
  grid: GridView;
  history: HistoryView;
  refreshAll: () => Promise<void>;
  dispose: () => void;
}

export function createApp(
  client: Client,
  doc: Document,
  mount: HTMLElement,
): App {
  const editor = new EditorView(client, doc);
  const grid = new GridView(client, doc);
  const history = new HistoryView(client, doc);
  mount.append(editor.root, grid.root, history.root);

  let lastReport: RunReport | null = null;

  const refreshAll = async () => {
    await editor.refresh();
    try {
      lastReport = await client.run();
    } catch {
      lastReport = null;
    }
    editor.setReport(lastReport);
    await grid.refresh();
    await history.refresh();
  };

  grid.onApplied = () => {
    void refreshAll();
  };
  history.onRestored = () => {
    void refreshAll();
  };

  const unsubscribe = client.subscribe((type) => {
    if (type === 'programChanged') void refreshAll();
  });

  return { editor, grid, history, refreshAll, dispose: unsubscribe };
}

declare const window: (Window & typeof globalThis) | undefined;

if (typeof window !== 'undefined' && typeof document !== 'undefined') {
  const mount = document.querySelector<HTMLElement>('#app');
  if (mount) {
    const client = new Client(window.location.origin);
    const app = createApp(client, document, mount);
    void app.refreshAll();
  }
}
