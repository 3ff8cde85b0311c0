"""Heterogeneity priors and the band/density feedback shown to experts.

Five prior families cover everything produced by the elicitation
protocol or used as a comparator:

- UniformTau / HalfNormalTau act directly on tau on the analysis scale;
- LogNormalTauSq / TruncatedLogNormalTauSq act on tau^2 on the log OR
  scale (the empirical default and its truncation);
- ElicitedRatio acts on the fitted effect-range distribution, with
  tau = log(shift + G) / 3.92 on the log OR scale.

Band probabilities are always reported on the log OR scale, so
analysis-scale draws are divided by omega first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..dist_core import (
    Gamma,
    HalfNormal,
    LogNormal,
    RngStream,
    TruncatedLogNormal,
    Uniform,
)
from .fitting import FittedRatioDistribution
from .scales import BAND_EDGES, RANGE_Z, OutcomeScale, ScaleKind


@dataclass(frozen=True, slots=True)
class UniformTau:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower < 0.0 or self.upper <= self.lower:
            raise ValueError("UniformTau requires 0 <= lower < upper")


@dataclass(frozen=True, slots=True)
class LogNormalTauSq:
    """log tau^2 ~ N(m, v), tau on the log OR scale."""

    m: float
    v: float

    def __post_init__(self):
        if self.v <= 0.0:
            raise ValueError("LogNormalTauSq requires v > 0")


@dataclass(frozen=True, slots=True)
class TruncatedLogNormalTauSq:
    """LogNormalTauSq restricted to tau^2 <= upper (upper on the OR scale)."""

    m: float
    v: float
    upper: float

    def __post_init__(self):
        if self.v <= 0.0:
            raise ValueError("TruncatedLogNormalTauSq requires v > 0")
        if self.upper <= 0.0:
            raise ValueError("TruncatedLogNormalTauSq requires upper > 0")


@dataclass(frozen=True, slots=True)
class ElicitedRatio:
    fit: FittedRatioDistribution


@dataclass(frozen=True, slots=True)
class HalfNormalTau:
    sd: float

    def __post_init__(self):
        if self.sd <= 0.0:
            raise ValueError("HalfNormalTau requires sd > 0")


PriorVariant = Union[UniformTau, LogNormalTauSq, TruncatedLogNormalTauSq, ElicitedRatio, HalfNormalTau]

# variants defined on the log OR scale; the rest act on the analysis scale
_OR_SCALE_VARIANTS = (LogNormalTauSq, TruncatedLogNormalTauSq, ElicitedRatio)


@dataclass(frozen=True, slots=True)
class BandProbabilities:
    p_low: float
    p_moderate: float
    p_high: float
    p_extreme: float

    def __post_init__(self):
        probs = self.as_tuple()
        if any(p < -1e-12 or p > 1.0 + 1e-12 for p in probs):
            raise ValueError("band probabilities must lie in [0, 1]")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError(f"band probabilities must sum to 1, got {sum(probs)}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_low, self.p_moderate, self.p_high, self.p_extreme)

    def to_dict(self) -> dict:
        return {
            "low": self.p_low,
            "moderate": self.p_moderate,
            "high": self.p_high,
            "extreme": self.p_extreme,
        }


@dataclass(frozen=True, slots=True)
class HeterogeneityPrior:
    variant: PriorVariant
    scale: OutcomeScale

    @property
    def omega(self) -> float:
        return self.scale.omega

    def sample_tau_or(self, rng: RngStream, n: int) -> np.ndarray:
        """Draw tau on the log OR scale."""
        v = self.variant
        if isinstance(v, UniformTau):
            return Uniform(v.lower, v.upper).sample(rng, n) / self.omega
        if isinstance(v, HalfNormalTau):
            return HalfNormal(v.sd).sample(rng, n) / self.omega
        if isinstance(v, LogNormalTauSq):
            return np.sqrt(LogNormal(v.m, math.sqrt(v.v)).sample(rng, n))
        if isinstance(v, TruncatedLogNormalTauSq):
            return np.sqrt(TruncatedLogNormal(v.m, math.sqrt(v.v), v.upper).sample(rng, n))
        g = v.fit.distribution.sample(rng, n)
        return np.log(v.fit.shift + g) / RANGE_Z

    def sample_tau_analysis(self, rng: RngStream, n: int) -> np.ndarray:
        """Draw tau on the analysis scale (omega times the OR-scale tau)."""
        v = self.variant
        if isinstance(v, (UniformTau, HalfNormalTau)):
            dist = Uniform(v.lower, v.upper) if isinstance(v, UniformTau) else HalfNormal(v.sd)
            return dist.sample(rng, n)
        return self.omega * self.sample_tau_or(rng, n)

    def cdf_tau_or(self, tau: float) -> float:
        """P(tau_OR <= tau), closed form via the underlying cdfs."""
        if tau < 0.0:
            return 0.0
        v = self.variant
        if isinstance(v, UniformTau):
            return Uniform(v.lower, v.upper).cdf(self.omega * tau)
        if isinstance(v, HalfNormalTau):
            return HalfNormal(v.sd).cdf(self.omega * tau)
        if isinstance(v, LogNormalTauSq):
            return LogNormal(v.m, math.sqrt(v.v)).cdf(tau * tau)
        if isinstance(v, TruncatedLogNormalTauSq):
            return TruncatedLogNormal(v.m, math.sqrt(v.v), v.upper).cdf(tau * tau)
        g = math.exp(RANGE_Z * tau) - v.fit.shift
        if g <= 0.0:
            return 0.0
        return v.fit.distribution.cdf(g)

    def to_dict(self) -> dict:
        v = self.variant
        name = type(v).__name__
        if isinstance(v, UniformTau):
            params = {"lower": v.lower, "upper": v.upper}
        elif isinstance(v, LogNormalTauSq):
            params = {"m": v.m, "v": v.v}
        elif isinstance(v, TruncatedLogNormalTauSq):
            params = {"m": v.m, "v": v.v, "upper": v.upper}
        elif isinstance(v, HalfNormalTau):
            params = {"sd": v.sd}
        else:
            params = {"fit": v.fit.to_dict()}
        scale = {"kind": self.scale.kind.value, "sigma": self.scale.sigma}
        return {"variant": name, "params": params, "scale": scale, "omega": self.omega}

    @classmethod
    def from_dict(cls, payload: dict) -> "HeterogeneityPrior":
        name = payload["variant"]
        params = payload["params"]
        if name == "UniformTau":
            variant: PriorVariant = UniformTau(**params)
        elif name == "LogNormalTauSq":
            variant = LogNormalTauSq(**params)
        elif name == "TruncatedLogNormalTauSq":
            variant = TruncatedLogNormalTauSq(**params)
        elif name == "HalfNormalTau":
            variant = HalfNormalTau(**params)
        elif name == "ElicitedRatio":
            variant = ElicitedRatio(fit=FittedRatioDistribution.from_dict(params["fit"]))
        else:
            raise ValueError(f"unknown prior variant {name!r}")
        scale = OutcomeScale(kind=ScaleKind(payload["scale"]["kind"]), sigma=payload["scale"]["sigma"])
        return cls(variant=variant, scale=scale)


def bands_from_sample(tau_or: np.ndarray) -> BandProbabilities:
    n = len(tau_or)
    lo, mid, hi = BAND_EDGES
    return BandProbabilities(
        p_low=float(np.count_nonzero(tau_or < lo)) / n,
        p_moderate=float(np.count_nonzero((tau_or >= lo) & (tau_or < mid))) / n,
        p_high=float(np.count_nonzero((tau_or >= mid) & (tau_or < hi))) / n,
        p_extreme=float(np.count_nonzero(tau_or >= hi)) / n,
    )


def prior_band_probabilities(prior: HeterogeneityPrior, n: int, rng: RngStream) -> BandProbabilities:
    """Monte Carlo band probabilities of the prior on the log OR scale."""
    if n < 10_000:
        raise ValueError(f"need at least 10^4 draws for stable bands, got {n}")
    return bands_from_sample(prior.sample_tau_or(rng, n))


def band_probabilities_exact(prior: HeterogeneityPrior) -> BandProbabilities:
    """Closed-form band probabilities (cross-check for the Monte Carlo path)."""
    lo, mid, hi = (prior.cdf_tau_or(e) for e in BAND_EDGES)
    return BandProbabilities(
        p_low=lo, p_moderate=mid - lo, p_high=hi - mid, p_extreme=1.0 - hi
    )


@dataclass(frozen=True, slots=True)
class FeedbackDensity:
    """Raw OR-scale tau draws plus a fixed-width histogram density."""

    sample: np.ndarray
    bin_width: float
    bin_edges: np.ndarray
    density: np.ndarray


FEEDBACK_BIN_WIDTH = 0.02


def feedback_density(prior: HeterogeneityPrior, n: int, rng: RngStream) -> FeedbackDensity:
    """Histogram feedback of the implied tau (log OR scale) for display."""
    if n < 10_000:
        raise ValueError(f"need at least 10^4 draws for a stable density, got {n}")
    tau = prior.sample_tau_or(rng, n)
    top = float(tau.max())
    nbins = max(1, math.ceil(top / FEEDBACK_BIN_WIDTH))
    edges = np.arange(nbins + 1) * FEEDBACK_BIN_WIDTH
    counts, _ = np.histogram(tau, bins=edges)
    density = counts / (n * FEEDBACK_BIN_WIDTH)
    return FeedbackDensity(sample=tau, bin_width=FEEDBACK_BIN_WIDTH, bin_edges=edges, density=density)


def kde_density(prior: HeterogeneityPrior, n: int, rng: RngStream, points: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Optional smooth feedback curve (Gaussian KDE, Silverman bandwidth)."""
    from scipy.stats import gaussian_kde

    tau = prior.sample_tau_or(rng, n)
    xs = np.linspace(0.0, float(tau.max()), points)
    return xs, gaussian_kde(tau, bw_method="silverman")(xs)
