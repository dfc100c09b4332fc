/** History view: snapshots newest-first with a simple line diff against
 * the previous snapshot, stored probe values if a run accompanied the
 * save, and a Restore button.
 */

import { Client, SnapshotJson } from './api.js';

/** Lines added/removed between two sources (multiset difference). */
export function lineDiff(
  before: string,
  after: string,
): { added: string[]; removed: string[] } {
  const count = (lines: string[]) => {
    const map = new Map<string, number>();
    for (const line of lines) map.set(line, (map.get(line) ?? 0) + 1);
    return map;
  };
  const beforeCounts = count(before.split('\n'));
  const afterCounts = count(after.split('\n'));
  const added: string[] = [];
  const removed: string[] = [];
  for (const [line, n] of afterCounts) {
    for (let i = (beforeCounts.get(line) ?? 0); i < n; i += 1) {
      added.push(line);
    }
  }
  for (const [line, n] of beforeCounts) {
    for (let i = (afterCounts.get(line) ?? 0); i < n; i += 1) {
      removed.push(line);
    }
  }
  return { added, removed };
}

export class HistoryView {
  readonly root: HTMLElement;
  private list!: HTMLElement;
  onRestored: (() => void) | null = null;

  constructor(
    private readonly client: Client,
    private readonly document: Document,
  ) {
    this.root = this.document.createElement('section');
    this.root.className = 'history-view';
    this.list = this.document.createElement('div');
    this.list.className = 'history-list';
    this.root.append(this.list);
  }

  async refresh(): Promise<void> {
    const entries = await this.client.history();
    const snapshots = await Promise.all(
      entries.map((entry) => this.client.snapshot(entry.index)),
    );
    this.render(snapshots);
  }

  private render(snapshots: SnapshotJson[]): void {
    const doc = this.document;
    this.list.replaceChildren();
    const newestFirst = [...snapshots].reverse();
    for (const snap of newestFirst) {
      const entry = doc.createElement('div');
      entry.className = 'history-entry';
      entry.dataset.index = String(snap.index);

      const header = doc.createElement('div');
      header.className = 'history-header';
      header.textContent = `#${snap.index} — ${new Date(
        snap.timestamp,
      ).toLocaleString()}`;
      const restore = doc.createElement('button');
      restore.className = 'restore';
      restore.textContent = 'Restore';
      restore.addEventListener('click', () => {
        void this.client.restore(snap.index).then(() => {
          this.onRestored?.();
          return this.refresh();
        });
      });
      header.append(restore);
      entry.append(header);

      const preview = doc.createElement('pre');
      preview.className = 'history-preview';
      preview.textContent = snap.source;
      entry.append(preview);

      const previous = snapshots.find((s) => s.index === snap.index - 1);
      if (previous) {
        const diff = lineDiff(previous.source, snap.source);
        const block = doc.createElement('pre');
        block.className = 'history-diff';
        block.textContent = [
          ...diff.removed.map((line) => `- ${line}`),
          ...diff.added.map((line) => `+ ${line}`),
        ].join('\n');
        entry.append(block);
      }

      if (snap.report) {
        const values = doc.createElement('div');
        values.className = 'history-values';
        const active = snap.report.captures.filter(
          (c) => c.universe === snap.report!.active,
        );
        values.textContent = active
          .map((c) => `${c.probe}: ${JSON.stringify(c.values)}`)
          .join('  ');
        entry.append(values);
      }
      this.list.append(entry);
    }
  }
}
