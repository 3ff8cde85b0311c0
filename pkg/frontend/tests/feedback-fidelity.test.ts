// @vitest-environment jsdom
// Band panel fidelity: percentages shown for chips entered through the grid
// are exactly the numbers returned by GET /feedback, never recomputed in the
// UI.
import { beforeAll, describe, expect, inject, it } from 'vitest';

import { ServiceClient } from '../src/api';
import { renderBands, renderInsufficient } from '../src/feedback';
import {
  formatPercent,
  GridState,
  newGrid,
  placedChips,
  renderGrid,
  toAllocation,
} from '../src/grid';
import type { BandProbabilities, FeedbackBody } from '../src/types';

const client = new ServiceClient(inject('serviceUrl'));

const TA163_CHIPS = [4, 5, 6, 6, 5, 4, 2, 1, 1];
const BAND_NAMES: Array<keyof BandProbabilities> = ['low', 'moderate', 'high', 'extreme'];

describe('band percentages come straight from the service', () => {
  let state: GridState;
  let gridRoot: HTMLElement;
  let body: FeedbackBody;

  beforeAll(async () => {
    // Enter the ulcerative-colitis roulette judgments by clicking the grid.
    state = newGrid(1, 10, 9, 34);
    gridRoot = document.createElement('div');
    const cb = {
      onChange(next: GridState) {
        state = next;
        renderGrid(gridRoot, state, cb);
      },
    };
    renderGrid(gridRoot, state, cb);

    const clickBin = (i: number) => {
      // Re-query every click: each change re-renders the grid.
      const stack = gridRoot.querySelectorAll<HTMLElement>('.chip-stack')[i];
      stack.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    };
    TA163_CHIPS.forEach((count, i) => {
      for (let c = 0; c < count; c++) clickBin(i);
    });

    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    await client.postStage2(env.session.id, 10.0);
    await client.putChips(env.session.id, toAllocation(state));
    body = await client.getFeedback(env.session.id);
  });

  it('the grid displays exactly the chips that were sent', () => {
    const stacks = gridRoot.querySelectorAll('.chip-stack');
    const displayed = Array.from(stacks, (s) => s.children.length);
    expect(displayed).toEqual(TA163_CHIPS);
    expect(placedChips(state)).toBe(34);
    expect(toAllocation(state).chips).toBe(state.chips); // same array by design
  });

  it('segment values equal the feedback body exactly', () => {
    const root = document.createElement('div');
    renderBands(root, body.bands);

    const segments = root.querySelectorAll<HTMLElement>('.band');
    expect(segments).toHaveLength(4);
    segments.forEach((seg, i) => {
      const name = BAND_NAMES[i];
      expect(seg.dataset.band).toBe(name);
      expect(Number(seg.dataset.value)).toBe(body.bands[name]);
      expect(seg.querySelector('span')?.textContent).toBe(
        `${name} ${formatPercent(body.bands[name])}`,
      );
    });

    const total = BAND_NAMES.reduce((acc, name) => acc + body.bands[name], 0);
    expect(total).toBeCloseTo(1.0, 9);
  });

  it('the fitted summary is present and concentrates on moderate heterogeneity', () => {
    expect(body.fit).not.toBeNull();
    expect(body.n_draws).toBe(100000);
    expect(body.bands.moderate).toBeGreaterThan(0.7);
  });
});

describe('no judgments yet', () => {
  it('renders the placeholder instead of fabricated numbers', () => {
    const root = document.createElement('div');
    renderInsufficient(root);
    expect(root.className).toBe('band-bar empty');
    expect(root.textContent).toBe('insufficient judgments');
    expect(root.querySelectorAll('.band')).toHaveLength(0);
  });

  it('the service refuses feedback before any chips are placed', async () => {
    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    await client.postStage2(env.session.id, 10.0);
    const err = await client.getFeedback(env.session.id).then(
      () => null,
      (e) => e,
    );
    expect(err).not.toBeNull();
  });
});
