/** Grid view: the probe-value table across universes, with a pivot
 * selector, per-column Apply buttons, and Save-as-PNG export.
 */

import { Client, GridJson, UniverseInfo } from './api.js';
import { gridToPng } from './png.js';

/** Variation ids that appear in every universe, i.e. top-level ones —
 * the only valid pivots. Derived from server data, not from the source. */
export function topLevelVariationIds(universes: UniverseInfo[]): string[] {
  if (universes.length === 0) return [];
  let shared = Object.keys(universes[0].assignment);
  for (const universe of universes.slice(1)) {
    shared = shared.filter((id) => id in universe.assignment);
  }
  return shared;
}

export class GridView {
  readonly root: HTMLElement;
  private pivotSelect!: HTMLSelectElement;
  private table!: HTMLElement;
  private status!: HTMLElement;
  private grid: GridJson | null = null;
  private universes: UniverseInfo[] = [];
  onApplied: (() => void) | null = null;

  constructor(
    private readonly client: Client,
    private readonly document: Document,
  ) {
    this.root = this.build();
  }

  private build(): HTMLElement {
    const doc = this.document;
    const root = doc.createElement('section');
    root.className = 'grid-view';

    const toolbar = doc.createElement('div');
    toolbar.className = 'toolbar';

    const label = doc.createElement('label');
    label.textContent = 'Y axis: ';
    this.pivotSelect = doc.createElement('select');
    this.pivotSelect.className = 'pivot-select';
    this.pivotSelect.addEventListener('change', () => {
      void this.refresh();
    });
    label.append(this.pivotSelect);
    toolbar.append(label);

    const save = doc.createElement('button');
    save.className = 'save-png';
    save.textContent = 'Save as PNG';
    save.addEventListener('click', () => this.savePng());
    toolbar.append(save);
    root.append(toolbar);

    this.status = doc.createElement('div');
    this.status.className = 'status';
    root.append(this.status);

    this.table = doc.createElement('div');
    this.table.className = 'grid-table';
    root.append(this.table);
    return root;
  }

  async refresh(): Promise<void> {
    try {
      this.universes = await this.client.universes();
      this.renderPivotOptions();
      const pivot = this.pivotSelect.value || undefined;
      this.grid = await this.client.grid(pivot);
      this.status.textContent = '';
      this.status.classList.remove('error');
    } catch (error) {
      this.status.textContent = String(
        error instanceof Error ? error.message : error,
      );
      this.status.classList.add('error');
      this.grid = null;
    }
    this.renderTable();
  }

  private renderPivotOptions(): void {
    const doc = this.document;
    const current = this.pivotSelect.value;
    this.pivotSelect.replaceChildren();
    const none = doc.createElement('option');
    none.value = '';
    none.textContent = '(universes)';
    this.pivotSelect.append(none);
    for (const id of topLevelVariationIds(this.universes)) {
      const option = doc.createElement('option');
      option.value = id;
      option.textContent = id;
      this.pivotSelect.append(option);
    }
    if ([...this.pivotSelect.options].some((o) => o.value === current)) {
      this.pivotSelect.value = current;
    }
  }

  /** Make every variation in this universe's assignment active. */
  private async apply(label: string): Promise<void> {
    const universe = this.universes.find((u) => u.label === label);
    if (!universe) return;
    for (const [vpId, index] of Object.entries(universe.assignment)) {
      await this.client.setActive(vpId, index);
    }
    this.onApplied?.();
  }

  private renderTable(): void {
    const doc = this.document;
    this.table.replaceChildren();
    if (!this.grid) return;
    const grid = this.grid;

    const table = doc.createElement('table');
    const head = doc.createElement('tr');
    head.append(doc.createElement('th'));
    grid.cols.forEach((col) => {
      const th = doc.createElement('th');
      const name = doc.createElement('div');
      name.textContent = col;
      th.append(name);
      if (!grid.pivot) {
        const apply = doc.createElement('button');
        apply.className = 'apply-universe';
        apply.textContent = 'Apply';
        apply.addEventListener('click', () => {
          void this.apply(col);
        });
        th.append(apply);
      }
      head.append(th);
    });
    table.append(head);

    grid.rows.forEach((row, r) => {
      const tr = doc.createElement('tr');
      const th = doc.createElement('th');
      th.textContent = row;
      tr.append(th);
      grid.cols.forEach((_, c) => {
        const td = doc.createElement('td');
        const cell = grid.cells[r][c];
        if (cell === null) td.textContent = '–';
        else if (Array.isArray(cell)) td.textContent = cell.join(', ');
        else {
          td.textContent = `⟨error: ${cell.error}⟩`;
          td.className = 'cell-error';
        }
        tr.append(td);
      });
      table.append(tr);
    });
    this.table.append(table);

    if (grid.excluded.length > 0) {
      const list = doc.createElement('ul');
      list.className = 'excluded';
      for (const { label, error } of grid.excluded) {
        const item = doc.createElement('li');
        item.textContent = `${label}: ${error}`;
        list.append(item);
      }
      this.table.append(list);
    }
  }

  /** PNG bytes of the current grid, or null when there is no grid. */
  exportPng(): Uint8Array | null {
    return this.grid ? gridToPng(this.grid) : null;
  }

  private savePng(): void {
    const bytes = this.exportPng();
    if (!bytes) return;
    const doc = this.document;
    const blob = new Blob([bytes.slice().buffer], { type: 'image/png' });
    const anchor = doc.createElement('a');
    anchor.href = URL.createObjectURL(blob);
    anchor.download = 'grid.png';
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }
}
