import type { BandProbabilities, FeedbackBody } from './types';
import { formatPercent } from './grid';

export const FEEDBACK_DEBOUNCE_MS = 150;

const BAND_ORDER: Array<keyof BandProbabilities> = ['low', 'moderate', 'high', 'extreme'];
const BAND_COLORS: Record<keyof BandProbabilities, string> = {
  low: '#34a853',
  moderate: '#fbbc04',
  high: '#ff8c00',
  extreme: '#ea4335',
};

/**
 * Debounced, single-flight fetcher for the feedback panel.
 *
 * Chip drags call schedule() on every change; only the last state within the
 * debounce window is fetched, and a newer request aborts an older in-flight
 * one so responses can never arrive out of order.
 */
export class FeedbackScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;

  constructor(
    private fetcher: (signal: AbortSignal) => Promise<FeedbackBody>,
    private onResult: (body: FeedbackBody) => void,
    private onError: (err: unknown) => void = () => {},
    private debounceMs: number = FEEDBACK_DEBOUNCE_MS,
  ) {}

  schedule(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire();
    }, this.debounceMs);
  }

  async fire(): Promise<void> {
    if (this.inflight) this.inflight.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const body = await this.fetcher(controller.signal);
      if (!controller.signal.aborted) this.onResult(body);
    } catch (err) {
      if (!controller.signal.aborted) this.onError(err);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  cancel(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    if (this.inflight) this.inflight.abort();
    this.inflight = null;
  }
}

/**
 * Four-segment probability bar. Every number shown is taken straight from
 * the service response; the raw value is kept on the segment as data-value.
 */
export function renderBands(root: HTMLElement, bands: BandProbabilities) {
  root.innerHTML = '';
  root.className = 'band-bar';
  for (const name of BAND_ORDER) {
    const p = bands[name];
    const seg = document.createElement('div');
    seg.className = `band band-${name}`;
    seg.style.background = BAND_COLORS[name];
    seg.style.flexGrow = String(Math.max(p, 0.001));
    seg.dataset.band = name;
    seg.dataset.value = String(p);
    seg.title = `${name}: ${formatPercent(p)}`;
    const label = document.createElement('span');
    label.textContent = `${name} ${formatPercent(p)}`;
    seg.appendChild(label);
    root.appendChild(seg);
  }
}

export function renderInsufficient(root: HTMLElement) {
  root.innerHTML = '';
  root.className = 'band-bar empty';
  const note = document.createElement('span');
  note.className = 'placeholder';
  note.textContent = 'insufficient judgments';
  root.appendChild(note);
}

/** Histogram of the implied tau density, drawn from the service's bins. */
export function renderDensity(canvas: HTMLCanvasElement, density: FeedbackBody['density']) {
  const ctx = canvas.getContext('2d');
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);

  const edges = density.bin_edges;
  const values = density.density;
  if (values.length === 0) return;

  const xMin = edges[0];
  const xMax = edges[edges.length - 1];
  const yMax = Math.max(...values) || 1;
  const pad = { left: 34, right: 8, top: 8, bottom: 22 };
  const cw = w - pad.left - pad.right;
  const ch = h - pad.top - pad.bottom;
  const toX = (x: number) => pad.left + ((x - xMin) / (xMax - xMin || 1)) * cw;
  const toH = (v: number) => (v / yMax) * ch;

  ctx.fillStyle = '#4285f4';
  for (let i = 0; i < values.length; i++) {
    const x0 = toX(edges[i]);
    const x1 = toX(edges[i + 1]);
    const bh = toH(values[i]);
    ctx.fillRect(x0, pad.top + ch - bh, Math.max(x1 - x0 - 1, 1), bh);
  }

  ctx.strokeStyle = '#ccc';
  ctx.beginPath();
  ctx.moveTo(pad.left, pad.top);
  ctx.lineTo(pad.left, pad.top + ch);
  ctx.lineTo(pad.left + cw, pad.top + ch);
  ctx.stroke();

  ctx.fillStyle = '#555';
  ctx.font = '10px sans-serif';
  ctx.textAlign = 'center';
  for (let i = 0; i <= 4; i++) {
    const x = xMin + ((xMax - xMin) * i) / 4;
    ctx.fillText(x.toFixed(2), toX(x), h - 6);
  }
  ctx.save();
  ctx.translate(10, pad.top + ch / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText('density of tau', 0, 0);
  ctx.restore();
}
