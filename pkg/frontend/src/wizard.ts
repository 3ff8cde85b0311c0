import { ApiError, ServiceClient } from './api';
import {
  FeedbackScheduler,
  renderBands,
  renderDensity,
  renderInsufficient,
} from './feedback';
import {
  GridState,
  newGrid,
  placedChips,
  renderGrid,
  toAllocation,
} from './grid';
import { createStore, Store } from './store';
import { canFinalize, isAllowed } from './transitions';
import type { FeedbackBody, SessionEnvelope, SessionJson } from './types';

export interface WizardState {
  session: SessionJson;
  question: string | null;
  grid: GridState | null;
  feedback: FeedbackBody | null;
  error: string | null;
}

const DEFAULT_CHIP_BUDGET = 20;
const DEFAULT_NBINS = 9;

export function renderWizard(root: HTMLElement, client: ServiceClient, envelope: SessionEnvelope) {
  const store = createStore<WizardState>({
    session: envelope.session,
    question: envelope.question,
    grid: null,
    feedback: null,
    error: null,
  });

  const scheduler = new FeedbackScheduler(
    (signal) => client.getFeedback(store.get().session.id, signal),
    (body) => store.set({ feedback: body }),
    (err) => store.set({ error: describe(err) }),
  );

  // Every answer goes through here: POST, then render whatever state the
  // service returned. A stale-state 409 reloads the session instead.
  async function apply(call: () => Promise<SessionEnvelope>) {
    try {
      const next = await call();
      store.set({ session: next.session, question: next.question, error: null });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        const fresh = await client.getSession(store.get().session.id);
        store.set({ session: fresh.session, question: fresh.question, error: err.message });
        return;
      }
      store.set({ error: describe(err) });
    }
  }

  function sync() {
    const s = store.get();
    root.innerHTML = '';

    const banner = document.createElement('div');
    banner.className = 'error-banner';
    if (s.error) {
      banner.textContent = s.error;
      const retry = document.createElement('button');
      retry.textContent = 'Dismiss';
      retry.addEventListener('click', () => store.set({ error: null }));
      banner.appendChild(retry);
    } else {
      banner.setAttribute('hidden', '');
    }
    root.appendChild(banner);

    const stage = document.createElement('section');
    stage.className = `stage stage-${s.session.stage.toLowerCase()}`;
    root.appendChild(stage);

    switch (s.session.stage) {
      case 'Stage1':
        renderStage1(stage, s, store, client, apply);
        break;
      case 'Stage2':
        renderStage2(stage, s, store, client, apply);
        break;
      case 'Stage3':
        renderStage3(stage, s, store, client, apply, scheduler);
        break;
      case 'Finalized':
        scheduler.cancel();
        renderFinalized(stage, s);
        break;
    }
  }

  sync();
  store.subscribe(sync);
  return store;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.type}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

function questionEl(text: string | null): HTMLElement {
  const q = document.createElement('p');
  q.className = 'question';
  q.textContent = text ?? '';
  return q;
}

function renderStage1(
  el: HTMLElement,
  s: WizardState,
  store: Store<WizardState>,
  client: ServiceClient,
  apply: (call: () => Promise<SessionEnvelope>) => Promise<void>,
) {
  el.appendChild(questionEl(s.question));
  for (const answer of [true, false]) {
    const btn = document.createElement('button');
    btn.textContent = answer ? 'Yes' : 'No';
    btn.disabled = !isAllowed(s.session.stage, 'stage1');
    btn.addEventListener('click', () => apply(() => client.postStage1(s.session.id, answer)));
    el.appendChild(btn);
  }
}

function renderStage2(
  el: HTMLElement,
  s: WizardState,
  store: Store<WizardState>,
  client: ServiceClient,
  apply: (call: () => Promise<SessionEnvelope>) => Promise<void>,
) {
  el.appendChild(questionEl(s.question));

  const input = document.createElement('input');
  input.type = 'number';
  input.min = String(s.session.r_min);
  input.step = 'any';
  input.placeholder = 'largest plausible R';

  const submit = document.createElement('button');
  submit.textContent = 'Set maximum';
  submit.disabled = !isAllowed(s.session.stage, 'stage2');
  submit.addEventListener('click', () => {
    const value = Number(input.value);
    if (!Number.isFinite(value)) {
      store.set({ error: 'enter a number for the largest plausible range' });
      return;
    }
    void apply(() => client.postStage2(s.session.id, value));
  });

  const decline = document.createElement('button');
  decline.textContent = 'Cannot judge a maximum';
  decline.disabled = !isAllowed(s.session.stage, 'stage2');
  decline.addEventListener('click', () => apply(() => client.postStage2(s.session.id, null)));

  el.appendChild(input);
  el.appendChild(submit);
  el.appendChild(decline);
}

function renderStage3(
  el: HTMLElement,
  s: WizardState,
  store: Store<WizardState>,
  client: ServiceClient,
  apply: (call: () => Promise<SessionEnvelope>) => Promise<void>,
  scheduler: FeedbackScheduler,
) {
  el.appendChild(questionEl(s.question));

  let grid = s.grid;
  if (!grid) {
    grid = newGrid(s.session.r_min, s.session.r_max ?? 10, DEFAULT_NBINS, DEFAULT_CHIP_BUDGET);
    s = { ...s, grid };
  }

  const gridEl = document.createElement('div');
  renderGrid(gridEl, grid, {
    onChange(next) {
      store.set({ grid: next });
      if (placedChips(next) > 0 && isAllowed(store.get().session.stage, 'chips')) {
        void client
          .putChips(store.get().session.id, toAllocation(next))
          .then((env) => {
            // chips do not advance the stage; keep the grid, refresh feedback
            store.set({ session: env.session });
            scheduler.schedule();
          })
          .catch((err) => store.set({ error: describe(err) }));
      }
    },
  });
  el.appendChild(gridEl);

  const panel = document.createElement('div');
  panel.className = 'feedback-panel';
  const bar = document.createElement('div');
  const canvas = document.createElement('canvas');
  canvas.width = 420;
  canvas.height = 160;
  panel.appendChild(bar);
  panel.appendChild(canvas);
  el.appendChild(panel);

  if (s.feedback && placedChips(grid) > 0) {
    renderBands(bar, s.feedback.bands);
    renderDensity(canvas, s.feedback.density);
  } else {
    renderInsufficient(bar);
  }

  const accept = document.createElement('button');
  accept.textContent = 'Finalize with fitted distribution';
  accept.disabled = !canFinalize(s.session, false);
  accept.addEventListener('click', () => apply(() => client.finalize(s.session.id, false)));

  const decline = document.createElement('button');
  decline.textContent = 'Cannot place chips';
  decline.disabled = !canFinalize(s.session, true);
  decline.addEventListener('click', () => apply(() => client.finalize(s.session.id, true)));

  el.appendChild(accept);
  el.appendChild(decline);
}

function renderFinalized(el: HTMLElement, s: WizardState) {
  const card = document.createElement('div');
  card.className = 'result-card';

  const title = document.createElement('h3');
  const result = s.session.result;
  title.textContent =
    result?.model === 'FixedEffect'
      ? 'Recommended model: fixed effect'
      : 'Recommended model: random effects';
  card.appendChild(title);

  const body = document.createElement('p');
  if (result?.prior) {
    body.textContent = `Heterogeneity prior: ${result.prior.variant}`;
    const detail = document.createElement('pre');
    detail.textContent = JSON.stringify(result.prior.params, null, 1);
    card.appendChild(body);
    card.appendChild(detail);
  } else {
    body.textContent = 'No heterogeneity prior: studies judged identical.';
    card.appendChild(body);
  }

  el.appendChild(card);
}
