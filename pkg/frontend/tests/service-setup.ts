// Boots the real session service once for the whole test run; the UI is
// only ever exercised against actual HTTP responses.
import { spawn, ChildProcess } from 'node:child_process';
import type { TestProject } from 'vitest/node';

let proc: ChildProcess | null = null;

export default async function setup(project: TestProject) {
  const port = 8900 + Math.floor(Math.random() * 500);
  const base = `http://127.0.0.1:${port}`;

  proc = spawn(
    'python3',
    ['-m', 'uvicorn', '--factory', 'hetprior.session_service:create_app', '--port', String(port)],
    { cwd: new URL('../..', import.meta.url).pathname, stdio: 'ignore' },
  );

  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${base}/interpretation?scale=LogOR`);
      if (res.ok) break;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }

  project.provide('serviceUrl', base);

  return () => {
    proc?.kill();
    proc = null;
  };
}

declare module 'vitest' {
  export interface ProvidedContext {
    serviceUrl: string;
  }
}
