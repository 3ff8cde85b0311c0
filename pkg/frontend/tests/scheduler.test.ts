// FeedbackScheduler behavior: one debounced request per burst of chip edits,
// and a newer request always wins over an older in-flight one.
import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { FEEDBACK_DEBOUNCE_MS, FeedbackScheduler } from '../src/feedback';
import type { FeedbackBody } from '../src/types';

interface Deferred {
  promise: Promise<FeedbackBody>;
  resolve: (body: FeedbackBody) => void;
  reject: (err: unknown) => void;
  signal: AbortSignal;
}

function fakeBody(tag: number): FeedbackBody {
  return {
    fit: null,
    bands: { low: tag, moderate: 0, high: 0, extreme: 0 },
    density: { bin_edges: [], density: [] },
    tau_sample: [],
    seed: tag,
    n_draws: 0,
  };
}

describe('FeedbackScheduler', () => {
  let calls: Deferred[];
  let results: FeedbackBody[];
  let errors: unknown[];
  let scheduler: FeedbackScheduler;

  beforeEach(() => {
    vi.useFakeTimers();
    calls = [];
    results = [];
    errors = [];
    scheduler = new FeedbackScheduler(
      (signal) => {
        const d = {} as Deferred;
        d.promise = new Promise<FeedbackBody>((resolve, reject) => {
          d.resolve = resolve;
          d.reject = reject;
        });
        d.signal = signal;
        calls.push(d);
        return d.promise;
      },
      (body) => results.push(body),
      (err) => errors.push(err),
    );
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it('coalesces a burst of schedule() calls into one request', async () => {
    for (let i = 0; i < 8; i++) {
      scheduler.schedule();
      await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS - 1);
    }
    expect(calls).toHaveLength(0); // every call reset the window

    await vi.advanceTimersByTimeAsync(1);
    expect(calls).toHaveLength(1);

    calls[0].resolve(fakeBody(1));
    await vi.runAllTimersAsync();
    expect(results.map((b) => b.seed)).toEqual([1]);
    expect(errors).toHaveLength(0);
  });

  it('a newer request aborts the in-flight one and only its result lands', async () => {
    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);
    expect(calls).toHaveLength(1);

    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);
    expect(calls).toHaveLength(2);
    expect(calls[0].signal.aborted).toBe(true);
    expect(calls[1].signal.aborted).toBe(false);

    // The stale response arrives after the new one; it must be dropped.
    calls[1].resolve(fakeBody(2));
    calls[0].resolve(fakeBody(1));
    await vi.runAllTimersAsync();
    expect(results.map((b) => b.seed)).toEqual([2]);
  });

  it('failures of an aborted request are swallowed', async () => {
    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);
    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);

    calls[0].reject(new Error('aborted mid-flight'));
    calls[1].resolve(fakeBody(2));
    await vi.runAllTimersAsync();
    expect(errors).toHaveLength(0);
    expect(results.map((b) => b.seed)).toEqual([2]);
  });

  it('failures of a live request reach onError', async () => {
    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);
    calls[0].reject(new Error('service unavailable'));
    await vi.runAllTimersAsync();
    expect(errors).toHaveLength(1);
    expect(results).toHaveLength(0);
  });

  it('cancel() drops the pending timer and aborts in-flight work', async () => {
    scheduler.schedule();
    scheduler.cancel();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS * 2);
    expect(calls).toHaveLength(0);

    scheduler.schedule();
    await vi.advanceTimersByTimeAsync(FEEDBACK_DEBOUNCE_MS);
    expect(calls).toHaveLength(1);
    scheduler.cancel();
    expect(calls[0].signal.aborted).toBe(true);
    calls[0].resolve(fakeBody(3));
    await vi.runAllTimersAsync();
    expect(results).toHaveLength(0);
  });
});
