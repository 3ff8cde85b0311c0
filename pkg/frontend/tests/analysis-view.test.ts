// @vitest-environment jsdom
// Analysis view: fixed-effect runs carry no predictive row, random-effects
// runs get a bold "(new study)" row, and failures surface verbatim.
import { beforeAll, describe, expect, inject, it } from 'vitest';

import {
  effectLabel,
  formatEffect,
  pollAnalysis,
  renderAnalysisTable,
  renderRunFailure,
} from '../src/analysis';
import { ApiError, ServiceClient } from '../src/api';
import type { AnalysisStatusBody, PosteriorSummaryJson } from '../src/types';

const client = new ServiceClient(inject('serviceUrl'));

// Short chains: the view contract under test does not depend on chain length.
const FAST_MCMC = { burn_in: 300, keep: 300, seed: 2 };

async function runToCompletion(body: Parameters<ServiceClient['startAnalysis']>[0]) {
  const created = await client.startAnalysis(body);
  let last: AnalysisStatusBody | null = null;
  for await (const status of pollAnalysis(client, created.run_id, 100)) {
    last = status;
  }
  return last!;
}

describe('analysis table', () => {
  let fe: PosteriorSummaryJson;
  let re: PosteriorSummaryJson;
  let root: HTMLElement;

  beforeAll(async () => {
    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    await client.postStage2(env.session.id, null); // decline: default prior

    const [feDone, reDone] = await Promise.all([
      runToCompletion({ dataset: 'ta163', effect: 'FixedEffect', mcmc: FAST_MCMC }),
      runToCompletion({
        dataset: 'ta163',
        effect: 'RandomEffects',
        prior: { from_session: env.session.id },
        mcmc: FAST_MCMC,
      }),
    ]);
    expect(feDone.status).toBe('done');
    expect(reDone.status).toBe('done');
    fe = feDone.result!.summary;
    re = reDone.result!.summary;

    root = document.createElement('div');
    renderAnalysisTable(root, [
      { label: 'Fixed effect', summary: fe },
      { label: 'Random effects, default prior', summary: re },
    ]);
  });

  it('one credible row per model, predictive row only for random effects', () => {
    const rows = Array.from(root.querySelectorAll('tbody tr'));
    expect(rows).toHaveLength(3);
    expect(rows[0].className).toBe('');
    expect(rows[1].className).toBe('');
    expect(rows[2].className).toBe('predictive-row');
    expect(rows[2].querySelector('b')?.textContent).toBe(
      'Random effects, default prior (new study)',
    );
  });

  it('header names the models, contrasts, band columns and DIC', () => {
    const header = Array.from(root.querySelectorAll('thead th'), (th) => th.textContent);
    expect(header[0]).toBe('Model');
    expect(header.slice(-5)).toEqual(['P_low', 'P_moderate', 'P_high', 'P_extreme', 'DIC']);
    const contrasts = header.slice(1, -5);
    expect(contrasts).toHaveLength(fe.n_treatments - 1);
    for (const c of contrasts) {
      expect(c).toContain('OR, median (95% CrI)');
      expect(c).toContain('vs. treatment 1');
    }
  });

  it('band cells are filled from the posterior for RE and left empty for FE', () => {
    const [feRow, reRow] = Array.from(root.querySelectorAll('tbody tr'));
    const bandCells = (row: Element) =>
      Array.from(row.querySelectorAll('td')).slice(-5, -1) as HTMLElement[];

    for (const cell of bandCells(feRow)) {
      expect(cell.textContent).toBe('');
      expect(cell.dataset.value).toBeUndefined();
    }
    expect(fe.tau).toBeNull();

    const reBands = re.tau!.bands;
    const values = bandCells(reRow).map((c) => Number(c.dataset.value));
    expect(values).toEqual([reBands.low, reBands.moderate, reBands.high, reBands.extreme]);
  });

  it('predictive cells are bold and wider than the credible intervals', () => {
    const rows = Array.from(root.querySelectorAll('tbody tr'));
    const predictiveCells = rows[2].querySelectorAll('td b');
    expect(predictiveCells.length).toBe(re.n_treatments); // label + effects
    const k = Object.keys(re.treatment_effects)[0];
    const te = re.treatment_effects[k];
    expect(te.predictive_odds_ratio).not.toBeNull();
    expect(te.predictive_odds_ratio!.upper).toBeGreaterThan(te.odds_ratio!.upper);
  });

  it('formats effects and labels the axis per likelihood', () => {
    expect(formatEffect({ median: 0.1289, lower: 0.034, upper: 0.4449 })).toBe(
      '0.13 (0.03, 0.44)',
    );
    expect(effectLabel(fe)).toBe('OR, median (95% CrI)');
    const normal = { likelihood: 'NormalIdentity' } as PosteriorSummaryJson;
    expect(effectLabel(normal, 'PASI score')).toBe('MD, median (95% CrI), PASI score');
  });
});

describe('failures', () => {
  it('renders the run error verbatim', () => {
    const root = document.createElement('div');
    renderRunFailure(root, {
      run_id: 'x',
      status: 'failed',
      progress: 1,
      result: null,
      error: 'chain 2 diverged: acceptance below target',
    });
    expect(root.querySelector('pre.run-error')?.textContent).toBe(
      'chain 2 diverged: acceptance below target',
    );
  });

  it('asking for an unknown run is a typed 404', async () => {
    const err = await client.getAnalysis('no-such-run').then(
      () => null,
      (e) => e,
    );
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).type).toBe('UnknownRun');
  });
});
