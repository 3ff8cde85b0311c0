import type { ChipAllocation } from './types';

/**
 * Roulette grid state: chips placed per bin plus an undo/redo history.
 *
 * The displayed counts and the allocation sent to the server are the same
 * array, so they cannot drift apart.
 */
export interface GridState {
  lower: number;
  upper: number;
  nbins: number;
  totalChips: number;
  chips: number[];
  undoStack: number[][];
  redoStack: number[][];
}

export function newGrid(lower: number, upper: number, nbins: number, totalChips: number): GridState {
  return {
    lower,
    upper,
    nbins,
    totalChips,
    chips: new Array(nbins).fill(0),
    undoStack: [],
    redoStack: [],
  };
}

export function binEdges(state: GridState): number[] {
  const width = (state.upper - state.lower) / state.nbins;
  return Array.from({ length: state.nbins + 1 }, (_, i) => state.lower + i * width);
}

export function binLabel(state: GridState, i: number): string {
  const edges = binEdges(state);
  return `${trim(edges[i])} to ${trim(edges[i + 1])}`;
}

function trim(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toFixed(2);
}

export function placedChips(state: GridState): number {
  return state.chips.reduce((a, b) => a + b, 0);
}

export function remainingChips(state: GridState): number {
  return state.totalChips - placedChips(state);
}

/** Fraction of the full chip budget sitting in bin i (Figure-style annotation). */
export function binFraction(state: GridState, i: number): number {
  return state.chips[i] / state.totalChips;
}

export function binPercentLabel(state: GridState, i: number): string {
  if (state.chips[i] === 0) return '';
  return `${formatPercent(binFraction(state, i))}`;
}

export function formatPercent(p: number): string {
  const pct = 100 * p;
  return `${Number.isInteger(pct) ? pct : pct.toFixed(1)}%`;
}

function push(state: GridState, next: number[]): GridState {
  return {
    ...state,
    chips: next,
    undoStack: [...state.undoStack, state.chips],
    redoStack: [],
  };
}

/** Add one chip to bin i; no-op when the budget is exhausted. */
export function placeChip(state: GridState, i: number): GridState {
  if (remainingChips(state) <= 0) return state;
  const next = state.chips.slice();
  next[i] += 1;
  return push(state, next);
}

/** Remove one chip from bin i; no-op on an empty bin. */
export function removeChip(state: GridState, i: number): GridState {
  if (state.chips[i] <= 0) return state;
  const next = state.chips.slice();
  next[i] -= 1;
  return push(state, next);
}

export function undo(state: GridState): GridState {
  const prev = state.undoStack[state.undoStack.length - 1];
  if (!prev) return state;
  return {
    ...state,
    chips: prev,
    undoStack: state.undoStack.slice(0, -1),
    redoStack: [...state.redoStack, state.chips],
  };
}

export function redo(state: GridState): GridState {
  const next = state.redoStack[state.redoStack.length - 1];
  if (!next) return state;
  return {
    ...state,
    chips: next,
    undoStack: [...state.undoStack, state.chips],
    redoStack: state.redoStack.slice(0, -1),
  };
}

/** The allocation body PUT to the server; chips are shared with the view. */
export function toAllocation(state: GridState): ChipAllocation {
  return {
    lower: state.lower,
    upper: state.upper,
    nbins: state.nbins,
    chips: state.chips,
    total_chips: state.totalChips,
  };
}

export interface GridCallbacks {
  onChange(state: GridState): void;
}

export function renderGrid(root: HTMLElement, state: GridState, cb: GridCallbacks) {
  root.innerHTML = '';
  root.className = 'roulette-grid';

  const maxColumn = Math.max(6, ...state.chips);
  const row = document.createElement('div');
  row.className = 'grid-bins';

  state.chips.forEach((count, i) => {
    const col = document.createElement('div');
    col.className = 'grid-bin';
    col.title = `R in [${binLabel(state, i)}]`;

    const stack = document.createElement('div');
    stack.className = 'chip-stack';
    stack.style.height = `${maxColumn * 14}px`;
    for (let c = 0; c < count; c++) {
      const chip = document.createElement('div');
      chip.className = 'chip';
      stack.appendChild(chip);
    }
    stack.addEventListener('click', () => cb.onChange(placeChip(state, i)));
    stack.addEventListener('contextmenu', (e) => {
      e.preventDefault();
      cb.onChange(removeChip(state, i));
    });

    const pct = document.createElement('div');
    pct.className = 'bin-percent';
    pct.textContent = binPercentLabel(state, i);

    const label = document.createElement('div');
    label.className = 'bin-label';
    label.textContent = binLabel(state, i);

    col.appendChild(pct);
    col.appendChild(stack);
    col.appendChild(label);
    row.appendChild(col);
  });

  const controls = document.createElement('div');
  controls.className = 'grid-controls';

  const counter = document.createElement('span');
  counter.className = 'chip-counter';
  counter.textContent = `${remainingChips(state)} of ${state.totalChips} chips left`;

  const undoBtn = document.createElement('button');
  undoBtn.textContent = 'Undo';
  undoBtn.disabled = state.undoStack.length === 0;
  undoBtn.addEventListener('click', () => cb.onChange(undo(state)));

  const redoBtn = document.createElement('button');
  redoBtn.textContent = 'Redo';
  redoBtn.disabled = state.redoStack.length === 0;
  redoBtn.addEventListener('click', () => cb.onChange(redo(state)));

  controls.appendChild(counter);
  controls.appendChild(undoBtn);
  controls.appendChild(redoBtn);

  root.appendChild(row);
  root.appendChild(controls);
}
