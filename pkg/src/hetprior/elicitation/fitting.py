"""Least-squares fitting of a ratio distribution to roulette judgments.

Both a gamma and a lognormal distribution are fitted to G = R - shift
(shift = the grid's lower limit, normally 1) by minimizing the sum of
squared differences between the elicited and fitted cumulative
probabilities at the bin upper edges.  The lower-SSE family wins; both
objective values are kept for the record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize, stats

from ..dist_core import DistributionSpec, Gamma, LogNormal, from_dict, to_dict
from .chips import ChipAllocation


class FitDegenerateError(ValueError):
    """Raised when the allocation cannot identify a two-parameter fit."""


class FitFamily(Enum):
    GammaOnRminus1 = "GammaOnRminus1"
    LogNormalOnRminus1 = "LogNormalOnRminus1"


@dataclass(frozen=True, slots=True)
class FittedRatioDistribution:
    """Winning fit to G = R - shift, with the rejected family's SSE."""

    family: FitFamily
    distribution: DistributionSpec
    shift: float
    sse: float
    alternative_sse: float

    def __post_init__(self):
        if self.sse > self.alternative_sse:
            raise ValueError("winning family must have the lower SSE")

    @property
    def params(self) -> tuple[float, float]:
        """(shape, rate) for gamma, (log-mean, log-variance) for lognormal."""
        if self.family is FitFamily.GammaOnRminus1:
            return (self.distribution.shape, self.distribution.rate)
        return (self.distribution.log_mean, self.distribution.log_sd ** 2)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "distribution": to_dict(self.distribution),
            "shift": self.shift,
            "sse": self.sse,
            "alternative_sse": self.alternative_sse,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "FittedRatioDistribution":
        return cls(
            family=FitFamily(payload["family"]),
            distribution=from_dict(payload["distribution"]),
            shift=payload["shift"],
            sse=payload["sse"],
            alternative_sse=payload["alternative_sse"],
        )


def _targets(chips: ChipAllocation) -> tuple[np.ndarray, np.ndarray]:
    edges = np.asarray(chips.upper_edges()) - chips.lower
    cum = np.asarray(chips.cumulative_probabilities())
    return edges, cum


def _moments(chips: ChipAllocation) -> tuple[float, float]:
    # chip histogram midpoint moments of G = R - lower
    mids = np.asarray(chips.midpoints()) - chips.lower
    w = np.asarray(chips.chips, dtype=float) / chips.placed
    mean = float(w @ mids)
    var = float(w @ (mids - mean) ** 2)
    if var <= 0.0:
        var = (chips.bin_width / 2.0) ** 2
    return mean, var

def _sse_gamma(theta: np.ndarray, edges: np.ndarray, cum: np.ndarray) -> float:
    shape, rate = np.exp(theta)
    fitted = stats.gamma.cdf(edges, a=shape, scale=1.0 / rate)
    return float(np.sum((cum - fitted) ** 2))


def _sse_lognormal(theta: np.ndarray, edges: np.ndarray, cum: np.ndarray) -> float:
    m, s = theta[0], math.exp(theta[1])
    fitted = stats.lognorm.cdf(edges, s=s, scale=math.exp(m))
    return float(np.sum((cum - fitted) ** 2))


def _minimize(objective, start: np.ndarray, edges, cum) -> tuple[np.ndarray, float]:
    res = optimize.minimize(
        objective,
        start,
        args=(edges, cum),
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000},
    )
    return res.x, float(res.fun)


def _fit_family(objective, starts: list[np.ndarray], grid: np.ndarray, edges, cum):
    # simplex from moment-matched starts, coarse grid as a stall guard
    best_x, best = None, math.inf
    for start in starts:
        x, val = _minimize(objective, start, edges, cum)
        if val < best:
            best_x, best = x, val
    grid_vals = [objective(g, edges, cum) for g in grid]
    g_idx = int(np.argmin(grid_vals))
    if grid_vals[g_idx] < best:
        x, val = _minimize(objective, grid[g_idx], edges, cum)
        if val < best:
            best_x, best = x, val
    return best_x, best


def fit_ratio(chips: ChipAllocation) -> FittedRatioDistribution:
    if not chips.fully_allocated:
        raise ValueError(
            f"fit requires all chips placed ({chips.placed} of {chips.total_chips})"
        )
    if chips.is_degenerate:
        raise FitDegenerateError(
            "all chips sit in a single bin; ask for judgments spread over "
            "at least two bins (or widen the bins) so a distribution can be fitted"
        )
    edges, cum = _targets(chips)
    mean, var = _moments(chips)

    g_start = np.log([mean * mean / var, mean / var])
    g_grid = np.stack(
        np.meshgrid(np.log(np.geomspace(0.1, 20, 25)), np.log(np.geomspace(0.05, 5, 25))),
        axis=-1,
    ).reshape(-1, 2)
    g_theta, g_sse = _fit_family(_sse_gamma, [g_start], g_grid, edges, cum)
    gamma_fit = Gamma(shape=float(np.exp(g_theta[0])), rate=float(np.exp(g_theta[1])))

    ln_m = math.log(mean * mean / math.sqrt(var + mean * mean))
    ln_s2 = math.log(1.0 + var / (mean * mean))
    ln_start = np.array([ln_m, 0.5 * math.log(ln_s2)])
    ln_grid = np.stack(
        np.meshgrid(np.linspace(-3, 4, 25), np.log(np.geomspace(0.05, 3, 25))),
        axis=-1,
    ).reshape(-1, 2)
    ln_theta, ln_sse = _fit_family(_sse_lognormal, [ln_start], ln_grid, edges, cum)
    lognorm_fit = LogNormal(log_mean=float(ln_theta[0]), log_sd=float(math.exp(ln_theta[1])))

    if g_sse <= ln_sse:
        return FittedRatioDistribution(
            family=FitFamily.GammaOnRminus1,
            distribution=gamma_fit,
            shift=chips.lower,
            sse=g_sse,
            alternative_sse=ln_sse,
        )
    return FittedRatioDistribution(
        family=FitFamily.LogNormalOnRminus1,
        distribution=lognorm_fit,
        shift=chips.lower,
        sse=ln_sse,
        alternative_sse=g_sse,
    )
