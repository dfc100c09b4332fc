import { spawn, ChildProcess } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { dirname, join, resolve } from 'node:path';
import { fileURLToPath } from 'node:url';

export interface TestServer {
  url: string;
  stop: () => void;
}

const REPO_ROOT = resolve(dirname(fileURLToPath(import.meta.url)), '..', '..');

/** Launch the real backend on a random port for a given program. */
export async function startServer(source: string): Promise<TestServer> {
  const dir = mkdtempSync(join(tmpdir(), 'vxl-ui-'));
  const file = join(dir, 'program.vxl');
  writeFileSync(file, source, 'utf-8');
  const port = 20000 + Math.floor(Math.random() * 20000);
  const child: ChildProcess = spawn(
    'python3',
    ['-m', 'vxl.cli', 'serve', file, '--port', String(port)],
    { cwd: REPO_ROOT, stdio: 'ignore' },
  );
  const url = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 15000;
  for (;;) {
    try {
      const response = await fetch(`${url}/program`);
      if (response.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) {
      child.kill();
      throw new Error('backend did not start');
    }
    await sleep(100);
  }
  return { url, stop: () => child.kill() };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((done) => setTimeout(done, ms));
}

/** Poll until `check` stops throwing / returns truthy. */
export async function waitFor<T>(
  check: () => T | Promise<T>,
  timeoutMs = 5000,
): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = new Error('timeout');
  for (;;) {
    try {
      const result = await check();
      if (result) return result;
      lastError = new Error(`falsy result: ${String(result)}`);
    } catch (error) {
      lastError = error;
    }
    if (Date.now() > deadline) throw lastError;
    await sleep(50);
  }
}
