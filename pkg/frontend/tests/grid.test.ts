import { describe, expect, it } from 'vitest';

import {
  binEdges,
  binFraction,
  binLabel,
  binPercentLabel,
  formatPercent,
  newGrid,
  placeChip,
  placedChips,
  redo,
  remainingChips,
  removeChip,
  toAllocation,
  undo,
} from '../src/grid';

describe('grid geometry', () => {
  it('spans [lower, upper] with equal bins', () => {
    const g = newGrid(1, 10, 9, 20);
    expect(binEdges(g)).toEqual([1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    expect(binLabel(g, 0)).toBe('1 to 2');
    expect(binLabel(g, 8)).toBe('9 to 10');
  });

  it('labels fractional edges to two decimals', () => {
    const g = newGrid(1, 2, 4, 10);
    expect(binLabel(g, 0)).toBe('1 to 1.25');
  });
});

describe('chip placement', () => {
  it('counts placed and remaining chips', () => {
    let g = newGrid(1, 10, 9, 20);
    g = placeChip(g, 2);
    g = placeChip(g, 2);
    g = placeChip(g, 5);
    expect(g.chips[2]).toBe(2);
    expect(placedChips(g)).toBe(3);
    expect(remainingChips(g)).toBe(17);
  });

  it('blocks placement beyond the chip budget', () => {
    let g = newGrid(1, 10, 9, 2);
    g = placeChip(g, 0);
    g = placeChip(g, 0);
    const full = g;
    g = placeChip(g, 1);
    expect(g).toBe(full);
    expect(placedChips(g)).toBe(2);
  });

  it('removal stops at zero', () => {
    let g = newGrid(1, 10, 9, 5);
    const empty = g;
    g = removeChip(g, 3);
    expect(g).toBe(empty);
  });

  it('annotates a bin with its share of the full budget', () => {
    // 5 of 20 chips in one bin reads as 25% no matter what else is placed
    let g = newGrid(1, 10, 9, 20);
    for (let i = 0; i < 5; i++) g = placeChip(g, 1);
    expect(binFraction(g, 1)).toBe(0.25);
    expect(binPercentLabel(g, 1)).toBe('25%');
    expect(binPercentLabel(g, 0)).toBe('');
  });

  it('formats non-integer percentages with one decimal', () => {
    expect(formatPercent(0.8554)).toBe('85.5%');
    expect(formatPercent(0.25)).toBe('25%');
  });
});

describe('undo and redo', () => {
  it('walks the history both ways', () => {
    let g = newGrid(1, 10, 9, 20);
    g = placeChip(g, 0);
    g = placeChip(g, 1);
    g = undo(g);
    expect(g.chips[1]).toBe(0);
    expect(g.chips[0]).toBe(1);
    g = redo(g);
    expect(g.chips[1]).toBe(1);
  });

  it('a new placement clears the redo stack', () => {
    let g = newGrid(1, 10, 9, 20);
    g = placeChip(g, 0);
    g = undo(g);
    g = placeChip(g, 4);
    expect(g.redoStack).toHaveLength(0);
    g = redo(g);
    expect(g.chips[4]).toBe(1);
  });

  it('undo on fresh grid is a no-op', () => {
    const g = newGrid(1, 10, 9, 20);
    expect(undo(g)).toBe(g);
    expect(redo(g)).toBe(g);
  });
});

describe('allocation payload', () => {
  it('sends exactly the displayed chips', () => {
    let g = newGrid(1, 10, 9, 34);
    const target = [4, 5, 6, 6, 5, 4, 2, 1, 1];
    target.forEach((n, i) => {
      for (let c = 0; c < n; c++) g = placeChip(g, i);
    });
    const body = toAllocation(g);
    expect(body).toEqual({
      lower: 1,
      upper: 10,
      nbins: 9,
      chips: target,
      total_chips: 34,
    });
    // same array, not a copy that could drift from the view
    expect(body.chips).toBe(g.chips);
  });
});
