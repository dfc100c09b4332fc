/** Editor view: a textarea plus a widget panel.
 *
 * Widgets are rendered from the marker spans found in the program text;
 * probe values shown beneath them are taken verbatim from the last run's
 * active universe.
 */

import {
  activeError,
  activeProbeValues,
  Client,
  RunReport,
  Span,
} from './api.js';
import { findProbes, findVariations } from './markers.js';

const encoder = new TextEncoder();

/** The server addresses spans in UTF-8 byte offsets. */
export function toByteSpan(
  source: string,
  startChar: number,
  endChar: number,
): Span {
  return {
    start: encoder.encode(source.slice(0, startChar)).length,
    end: encoder.encode(source.slice(0, endChar)).length,
  };
}

export class EditorView {
  readonly root: HTMLElement;
  private textarea!: HTMLTextAreaElement;
  private widgets!: HTMLElement;
  private status!: HTMLElement;
  private report: RunReport | null = null;

  constructor(
    private readonly client: Client,
    private readonly document: Document,
  ) {
    this.root = this.build();
  }

  private build(): HTMLElement {
    const doc = this.document;
    const root = doc.createElement('section');
    root.className = 'editor-view';

    const toolbar = doc.createElement('div');
    toolbar.className = 'toolbar';
    for (const [label, handler] of [
      ['Add variation', () => this.addMarker('variation')],
      ['Add probe', () => this.addMarker('probe')],
      ['Save', () => this.save()],
      ['Run', () => this.run()],
      ['Cleanup', () => this.cleanup()],
    ] as const) {
      const button = doc.createElement('button');
      button.textContent = label;
      button.addEventListener('click', () => {
        void handler();
      });
      toolbar.append(button);
    }
    root.append(toolbar);

    this.textarea = doc.createElement('textarea');
    this.textarea.className = 'source';
    this.textarea.rows = 18;
    root.append(this.textarea);

    this.status = doc.createElement('div');
    this.status.className = 'status';
    root.append(this.status);

    this.widgets = doc.createElement('div');
    this.widgets.className = 'widgets';
    root.append(this.widgets);
    return root;
  }

  async refresh(): Promise<void> {
    const { source } = await this.client.getProgram();
    this.textarea.value = source;
    this.renderWidgets();
  }

  setReport(report: RunReport | null): void {
    this.report = report;
    this.renderWidgets();
  }

  private async mutate(action: () => Promise<unknown>): Promise<void> {
    try {
      await action();
      this.status.textContent = '';
    } catch (error) {
      this.status.textContent = String(
        error instanceof Error ? error.message : error,
      );
      this.status.classList.add('error');
      return;
    }
    this.status.classList.remove('error');
    await this.refresh();
  }

  private async addMarker(kind: 'variation' | 'probe'): Promise<void> {
    const { selectionStart, selectionEnd, value } = this.textarea;
    const span = toByteSpan(value, selectionStart, selectionEnd);
    await this.mutate(() =>
      kind === 'variation'
        ? this.client.addVariation(span)
        : this.client.addProbe(span),
    );
  }

  private async save(): Promise<void> {
    await this.mutate(() => this.client.putProgram(this.textarea.value));
  }

  private async run(): Promise<void> {
    await this.mutate(async () => {
      this.report = await this.client.run();
    });
  }

  private async cleanup(): Promise<void> {
    await this.mutate(() => this.client.cleanup());
  }

  private renderWidgets(): void {
    const doc = this.document;
    const source = this.textarea.value;
    this.widgets.replaceChildren();

    for (const vp of findVariations(source)) {
      const widget = doc.createElement('div');
      widget.className = 'variation-widget';
      widget.dataset.variationId = vp.id;

      const title = doc.createElement('input');
      title.className = 'vp-name';
      title.value = vp.name;
      title.placeholder = '(derived name)';
      title.addEventListener('change', () => {
        void this.mutate(() => this.client.rename(vp.id, title.value));
      });
      widget.append(title);

      const tabs = doc.createElement('div');
      tabs.className = 'alt-tabs';
      vp.alternatives.forEach((alt, index) => {
        const tab = doc.createElement('div');
        tab.className = 'alt-tab';
        if (index === vp.activeIndex) tab.classList.add('active');
        if (alt.disabled) tab.classList.add('disabled');

        const pick = doc.createElement('button');
        pick.className = 'alt-pick';
        pick.textContent = alt.name || alt.bodyText;
        pick.title = alt.bodyText;
        pick.addEventListener('click', () => {
          void this.mutate(() => this.client.setActive(vp.id, index));
        });
        tab.append(pick);

        const toggle = doc.createElement('input');
        toggle.type = 'checkbox';
        toggle.className = 'alt-disable';
        toggle.checked = alt.disabled;
        toggle.title = 'disabled';
        toggle.addEventListener('change', () => {
          void this.mutate(() =>
            this.client.setDisabled(vp.id, index, toggle.checked),
          );
        });
        tab.append(toggle);
        tabs.append(tab);
      });
      widget.append(tabs);

      const add = doc.createElement('button');
      add.className = 'alt-add';
      add.textContent = '+ alternative';
      add.addEventListener('click', () => {
        void this.mutate(() => this.client.addAlternative(vp.id));
      });
      widget.append(add);
      this.widgets.append(widget);
    }

    const failure = this.report ? activeError(this.report) : null;
    const values = this.report ? activeProbeValues(this.report) : null;
    for (const probe of findProbes(source)) {
      const badge = doc.createElement('div');
      badge.className = 'probe-badge';
      badge.dataset.probeId = probe.id;
      if (failure !== null) {
        badge.classList.add('error');
        badge.textContent = `${probe.id}: ⟨${failure}⟩`;
      } else {
        const captured = values?.get(probe.id);
        badge.textContent = captured
          ? `${probe.id}: ${captured.map((v) => JSON.stringify(v)).join(', ')}`
          : `${probe.id}: –`;
      }
      this.widgets.append(badge);
    }
  }
}
