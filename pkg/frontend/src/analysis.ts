import type { ServiceClient } from './api';
import type {
  AnalysisStatusBody,
  EffectSummary,
  PosteriorSummaryJson,
} from './types';
import { formatPercent } from './grid';

/** Poll an analysis run until it reaches done or failed, yielding each body. */
export async function* pollAnalysis(
  client: ServiceClient,
  runId: string,
  intervalMs = 500,
): AsyncGenerator<AnalysisStatusBody> {
  while (true) {
    const body = await client.getAnalysis(runId);
    yield body;
    if (body.status === 'done' || body.status === 'failed') break;
    await new Promise((r) => setTimeout(r, intervalMs));
  }
}

export function formatEffect(es: EffectSummary): string {
  return `${es.median.toFixed(2)} (${es.lower.toFixed(2)}, ${es.upper.toFixed(2)})`;
}

export function effectLabel(summary: PosteriorSummaryJson, unit?: string): string {
  const base = summary.likelihood === 'BinomialLogit' ? 'OR' : 'MD';
  const suffix = unit ? `, ${unit}` : '';
  return `${base}, median (95% CrI)${suffix}`;
}

export interface AnalysisRun {
  label: string;
  summary: PosteriorSummaryJson;
}

function treatmentLabel(k: number, names?: Record<number, string>): string {
  const name = (i: number) => names?.[i] ?? `treatment ${i}`;
  return `${name(k)} vs. ${name(1)}`;
}

function effectCell(summary: PosteriorSummaryJson, k: string, predictive: boolean): EffectSummary | null {
  const te = summary.treatment_effects[k];
  if (!te) return null;
  if (summary.likelihood === 'BinomialLogit') {
    return predictive ? te.predictive_odds_ratio : te.odds_ratio;
  }
  return predictive ? te.predictive : te.d;
}

/**
 * Side-by-side results: one credible row per model, plus a bold predictive
 * row beneath it for random-effects runs. Fixed-effect runs have no
 * predictive distribution, so no such row appears.
 */
export function renderAnalysisTable(
  root: HTMLElement,
  runs: AnalysisRun[],
  opts: { names?: Record<number, string>; unit?: string } = {},
) {
  root.innerHTML = '';
  if (runs.length === 0) return;

  const treatments = Object.keys(runs[0].summary.treatment_effects);
  const table = document.createElement('table');
  table.className = 'analysis-table';

  const head = table.createTHead().insertRow();
  const cols = [
    'Model',
    ...treatments.map((k) => `${effectLabel(runs[0].summary, opts.unit)} ${treatmentLabel(Number(k), opts.names)}`),
    'P_low',
    'P_moderate',
    'P_high',
    'P_extreme',
    'DIC',
  ];
  for (const c of cols) {
    const th = document.createElement('th');
    th.textContent = c;
    head.appendChild(th);
  }

  const body = table.createTBody();
  for (const run of runs) {
    const s = run.summary;
    const row = body.insertRow();
    row.insertCell().textContent = run.label;
    for (const k of treatments) {
      const es = effectCell(s, k, false);
      row.insertCell().textContent = es ? formatEffect(es) : '';
    }
    const bands = s.tau?.bands;
    for (const name of ['low', 'moderate', 'high', 'extreme'] as const) {
      const cell = row.insertCell();
      if (bands) {
        cell.textContent = formatPercent(bands[name]);
        cell.dataset.value = String(bands[name]);
      } else {
        cell.textContent = '';
      }
    }
    row.insertCell().textContent = s.dic.dic.toFixed(2);

    const hasPredictive = treatments.some((k) => effectCell(s, k, true) !== null);
    if (hasPredictive) {
      const prow = body.insertRow();
      prow.className = 'predictive-row';
      const label = prow.insertCell();
      const b = document.createElement('b');
      b.textContent = `${run.label} (new study)`;
      label.appendChild(b);
      for (const k of treatments) {
        const es = effectCell(s, k, true);
        const cell = prow.insertCell();
        if (es) {
          const bold = document.createElement('b');
          bold.textContent = formatEffect(es);
          cell.appendChild(bold);
        }
      }
      for (let i = 0; i < 5; i++) prow.insertCell();
    }
  }

  root.appendChild(table);

  const warnings = runs.flatMap((r) => r.summary.diagnostics.warnings ?? []);
  if (warnings.length > 0) {
    const note = document.createElement('pre');
    note.className = 'engine-warnings';
    note.textContent = warnings.join('\n');
    root.appendChild(note);
  }
}

export function renderRunFailure(root: HTMLElement, body: AnalysisStatusBody) {
  root.innerHTML = '';
  const pre = document.createElement('pre');
  pre.className = 'run-error';
  pre.textContent = body.error ?? 'analysis failed';
  root.appendChild(pre);
}
