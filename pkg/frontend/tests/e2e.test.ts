// End-to-end smoke: generate a chain, ingest it, serve the real backend,
// then drive the UI through the hierarchy (chain -> block -> tx ->
// address) and one search of each kind.

import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { App } from '../src/app.js';

const PORT = 8761;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess | null = null;
let workDir: string;

function cli(...args: string[]): void {
  const result = spawnSync('python3', ['-m', 'chainviser.cli', ...args], {
    cwd: join(__dirname, '..', '..'),
    encoding: 'utf-8',
  });
  if (result.status !== 0) {
    throw new Error(`cli ${args[0]} failed: ${result.stderr}`);
  }
}

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/api/health`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error('backend never became healthy');
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 'chainviser-e2e-'));
  const chainFile = join(workDir, 'e2e.slu.jsonl');
  const storeDir = join(workDir, 'store');
  cli(
    'gen', '--seed', '99', '--days', '1', '--interval-secs', '600',
    '--mean-txs', '8', '--wallets', '40', '--out', chainFile,
  );
  cli('validate', chainFile);
  cli('ingest', chainFile, '--store', storeDir);
  server = spawn(
    'python3',
    ['-m', 'chainviser.cli', 'serve', '--store', storeDir, '--listen', `127.0.0.1:${PORT}`],
    { cwd: join(__dirname, '..', '..'), stdio: 'ignore' },
  );
  await waitForHealth();
});

afterAll(() => {
  server?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

describe('hierarchical exploring against the live stack', () => {
  it('walks chain -> block -> tx -> address and resolves all three search kinds', async () => {
    document.body.innerHTML = '<div id="root"></div>';
    window.location.hash = '';
    const app = new App(document.getElementById('root')!, BASE, { pollMs: 0 });

    // blockchain page
    await app.show('/');
    const blockLinks = [...document.querySelectorAll('a.block-link')];
    expect(blockLinks.length).toBe(6);
    expect(document.querySelectorAll('.trend-chart').length).toBe(1);

    // follow a subordinate block into its own page
    const blockRoute = blockLinks[blockLinks.length - 1].getAttribute('href')!;
    await app.navigate(blockRoute);
    expect(document.querySelector('.block-essential')).not.toBeNull();
    const coinLinks = [...document.querySelectorAll('a.coin-link')];
    expect(coinLinks.length).toBeGreaterThan(0);

    // follow a subordinate transaction
    const txRoute = coinLinks[0].getAttribute('href')!;
    await app.navigate(txRoute);
    expect(document.querySelector('.coin-sankey')).not.toBeNull();
    const addressLinks = [...document.querySelectorAll('.tx-tables a')];
    expect(addressLinks.length).toBeGreaterThan(0);

    // follow a participating address
    const addressRoute = addressLinks[0].getAttribute('href')!;
    await app.navigate(addressRoute);
    expect(document.querySelector('.address-essential')).not.toBeNull();
    expect(document.querySelectorAll('.address-visual .trend-bar').length).toBe(30);

    // query exploring mode: height, txid, address
    const txid = txRoute.split('/').pop()!;
    const address = addressRoute.split('/').pop()!;
    await app.search('3');
    expect(window.location.hash).toBe('#/block/3');
    expect(document.querySelector('.block-essential')).not.toBeNull();
    await app.search(txid);
    expect(window.location.hash).toBe(`#/tx/${txid}`);
    await app.search(address);
    expect(window.location.hash).toBe(`#/address/${address}`);
  }, 60000);
});
