/** Typed client for the exploration server's HTTP API.
 *
 * Every mutation the UI performs goes through one of these calls; views
 * never compute universe labels, grid cells, or names themselves.
 */

export interface Span {
  start: number;
  end: number;
}

export interface UniverseInfo {
  index: number;
  label: string;
  assignment: Record<string, number>;
  status?: 'ok' | 'failed';
}

export interface RunUniverse {
  index: number;
  label: string;
  assignment: Record<string, number>;
  status: 'ok' | 'failed';
  error?: string;
  steps: number;
}

export interface RunCapture {
  universe: number;
  probe: string;
  values: unknown[];
  truncated: boolean;
}

export interface RunReport {
  entry: string;
  active: number;
  universes: RunUniverse[];
  captures: RunCapture[];
}

export interface GridJson {
  title: string;
  rows: string[];
  cols: string[];
  cells: (string[] | { error: string } | null)[][];
  excluded: { label: string; error: string }[];
  pivot: string | null;
}

export interface HistoryEntry {
  index: number;
  timestamp: number;
  hasReport: boolean;
}

export interface SnapshotJson {
  index: number;
  timestamp: number;
  source: string;
  report: RunReport | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let message = `${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.error === 'string') message = body.error;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, message);
  }
  return (await response.json()) as T;
}

export class Client {
  constructor(readonly base: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    return unwrap<T>(await fetch(this.base + path, init));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  getProgram(): Promise<{ source: string }> {
    return this.request('/program');
  }

  putProgram(source: string): Promise<{ source: string }> {
    return this.request('/program', {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ source }),
    });
  }

  run(entry?: string): Promise<RunReport> {
    return this.post('/run', entry ? { entry } : {});
  }

  universes(): Promise<UniverseInfo[]> {
    return this.request('/universes');
  }

  grid(pivot?: string): Promise<GridJson> {
    const query = pivot ? `?pivot=${encodeURIComponent(pivot)}` : '';
    return this.request(`/grid${query}`);
  }

  addVariation(span: Span): Promise<{ id: string }> {
    return this.post('/markers/variation', span);
  }

  addProbe(span: Span): Promise<{ id: string }> {
    return this.post('/markers/probe', span);
  }

  addReplacement(span: Span, replacement: string): Promise<{ id: string }> {
    return this.post('/markers/replacement', { ...span, replacement });
  }

  setActive(vpId: string, index: number): Promise<{ source: string }> {
    return this.post(`/variation/${vpId}/active`, { index });
  }

  setDisabled(
    vpId: string,
    altIndex: number,
    disabled: boolean,
  ): Promise<{ source: string }> {
    return this.post(`/variation/${vpId}/alt/${altIndex}/disabled`, {
      disabled,
    });
  }

  rename(
    vpId: string,
    name: string,
    altIndex?: number,
  ): Promise<{ source: string }> {
    return this.post(`/variation/${vpId}/rename`, {
      name,
      ...(altIndex === undefined ? {} : { altIndex }),
    });
  }

  addAlternative(vpId: string, body?: string): Promise<{ source: string }> {
    return this.post(
      `/variation/${vpId}/alternative`,
      body === undefined ? {} : { body },
    );
  }

  cleanup(): Promise<{ source: string }> {
    return this.post('/cleanup', {});
  }

  history(): Promise<HistoryEntry[]> {
    return this.request('/history');
  }

  snapshot(index: number): Promise<SnapshotJson> {
    return this.request(`/history/${index}`);
  }

  restore(index: number): Promise<{ source: string }> {
    return this.post(`/history/${index}/restore`, {});
  }

  /** Subscribe to the mutation event stream; returns an unsubscribe fn. */
  subscribe(onEvent: (type: string) => void): () => void {
    const source = new EventSource(`${this.base}/events`);
    source.onmessage = (event) => {
      try {
        onEvent(JSON.parse(event.data).type);
      } catch {
        /* ignore malformed events */
      }
    };
    return () => source.close();
  }
}

/** Probe values of the active universe, keyed by probe id. */
export function activeProbeValues(
  report: RunReport,
): Map<string, unknown[]> {
  const values = new Map<string, unknown[]>();
  for (const capture of report.captures) {
    if (capture.universe === report.active) {
      values.set(capture.probe, capture.values);
    }
  }
  return values;
}

/** Error of the active universe, if it failed. */
export function activeError(report: RunReport): string | null {
  const active = report.universes[report.active];
  return active && active.status === 'failed' ? (active.error ?? null) : null;
}
