import { ServiceClient } from './api';
import { renderWizard } from './wizard';
import { pollAnalysis, renderAnalysisTable, renderRunFailure, AnalysisRun } from './analysis';

const client = new ServiceClient('');

const SCALES = [
  'LogOR',
  'LogHR',
  'LogRR',
  'LogRoM',
  'MeanDifference',
  'SMD',
  'Probit',
];

function renderLauncher(root: HTMLElement) {
  root.innerHTML = '';

  const form = document.createElement('div');
  form.className = 'launcher';

  const select = document.createElement('select');
  for (const s of SCALES) {
    const opt = document.createElement('option');
    opt.value = s;
    opt.textContent = s;
    select.appendChild(opt);
  }

  const sigma = document.createElement('input');
  sigma.type = 'number';
  sigma.step = 'any';
  sigma.placeholder = 'sigma (mean difference only)';
  sigma.hidden = true;
  select.addEventListener('change', () => {
    sigma.hidden = select.value !== 'MeanDifference';
  });

  const start = document.createElement('button');
  start.textContent = 'Start elicitation';
  start.addEventListener('click', async () => {
    try {
      const env = await client.createSession(
        select.value,
        sigma.hidden || sigma.value === '' ? undefined : Number(sigma.value),
      );
      renderWizard(root, client, env);
    } catch (err) {
      alert(err instanceof Error ? err.message : String(err));
    }
  });

  form.appendChild(select);
  form.appendChild(sigma);
  form.appendChild(start);
  root.appendChild(form);
}

async function runComparison(root: HTMLElement, dataset: string, sessionId: string | null) {
  root.innerHTML = '<p>running...</p>';
  const runs: AnalysisRun[] = [];
  const requests: Array<{ label: string; body: Parameters<ServiceClient['startAnalysis']>[0] }> = [
    { label: 'FE', body: { dataset, effect: 'FixedEffect' } },
  ];
  if (sessionId) {
    requests.push({
      label: 'RE, elicited',
      body: { dataset, effect: 'RandomEffects', prior: { from_session: sessionId } },
    });
  }

  for (const req of requests) {
    const { run_id } = await client.startAnalysis(req.body);
    let last = null;
    for await (const body of pollAnalysis(client, run_id)) {
      last = body;
      root.innerHTML = `<p>${req.label}: ${body.status} (${Math.round(body.progress * 100)}%)</p>`;
    }
    if (last?.status === 'failed') {
      renderRunFailure(root, last);
      return;
    }
    if (last?.result) runs.push({ label: req.label, summary: last.result.summary });
  }

  renderAnalysisTable(root, runs);
}

function boot() {
  const app = document.getElementById('app');
  if (!app) return;

  const wizardPane = document.createElement('div');
  wizardPane.id = 'wizard';
  const analysisPane = document.createElement('div');
  analysisPane.id = 'analysis';

  const controls = document.createElement('div');
  controls.className = 'analysis-controls';
  const datasetInput = document.createElement('input');
  datasetInput.placeholder = 'dataset (e.g. ta163)';
  datasetInput.value = 'ta163';
  const sessionInput = document.createElement('input');
  sessionInput.placeholder = 'finalized session id (optional)';
  const runBtn = document.createElement('button');
  runBtn.textContent = 'Run synthesis';
  runBtn.addEventListener('click', () => {
    void runComparison(analysisPane, datasetInput.value, sessionInput.value || null);
  });
  controls.appendChild(datasetInput);
  controls.appendChild(sessionInput);
  controls.appendChild(runBtn);

  app.appendChild(wizardPane);
  app.appendChild(controls);
  app.appendChild(analysisPane);

  renderLauncher(wizardPane);
}

document.addEventListener('DOMContentLoaded', boot);
