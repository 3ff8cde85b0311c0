"""Posterior summaries, DIC, convergence diagnostics, and contrasts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..elicitation import BandProbabilities, EffectModel, bands_from_sample
from .data import Likelihood


@dataclass(frozen=True, slots=True)
class EffectSummary:
    median: float
    lower: float
    upper: float

    def to_dict(self) -> dict:
        return {"median": self.median, "lower": self.lower, "upper": self.upper}


def effect_summary(draws: np.ndarray) -> EffectSummary:
    med, lo, hi = np.percentile(draws, [50.0, 2.5, 97.5])
    return EffectSummary(median=float(med), lower=float(lo), upper=float(hi))


@dataclass(frozen=True, slots=True)
class TreatmentEffect:
    """d[k] - d[1] summaries; ratio-scale and predictive views when defined."""

    treatment: int
    d: EffectSummary
    odds_ratio: Optional[EffectSummary]
    predictive: Optional[EffectSummary]
    predictive_odds_ratio: Optional[EffectSummary]

    def to_dict(self) -> dict:
        return {
            "treatment": self.treatment,
            "d": self.d.to_dict(),
            "odds_ratio": self.odds_ratio.to_dict() if self.odds_ratio else None,
            "predictive": self.predictive.to_dict() if self.predictive else None,
            "predictive_odds_ratio": (
                self.predictive_odds_ratio.to_dict() if self.predictive_odds_ratio else None
            ),
        }


@dataclass(frozen=True, slots=True)
class TauSummary:
    median: float
    lower: float
    upper: float
    bands: BandProbabilities

    def to_dict(self) -> dict:
        return {
            "median": self.median,
            "lower": self.lower,
            "upper": self.upper,
            "bands": self.bands.to_dict(),
        }


@dataclass(frozen=True, slots=True)
class DicSummary:
    dbar: float
    p_d: float
    dic: float

    def to_dict(self) -> dict:
        return {"dbar": self.dbar, "p_d": self.p_d, "dic": self.dic}


def dic(deviance_trace: np.ndarray, plug_in_deviance: float) -> DicSummary:
    """dbar + (dbar - plug-in); the plug-in sits at posterior-mean parameters."""
    dbar = float(np.mean(deviance_trace))
    p_d = dbar - float(plug_in_deviance)
    return DicSummary(dbar=dbar, p_d=p_d, dic=dbar + p_d)


@dataclass(frozen=True, slots=True)
class Diagnostics:
    acceptance: dict[str, float]
    psrf: dict[str, float]
    warnings: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "acceptance": self.acceptance,
            "psrf": self.psrf,
            "warnings": list(self.warnings),
        }


def split_chain_psrf(per_chain: np.ndarray) -> float:
    """Potential scale reduction factor over chains split in half."""
    chains, n = per_chain.shape
    half = n // 2
    if half < 2:
        return float("nan")
    seqs = np.concatenate([per_chain[:, :half], per_chain[:, half : 2 * half]], axis=0)
    m, n2 = seqs.shape
    means = seqs.mean(axis=1)
    w = float(np.mean(seqs.var(axis=1, ddof=1)))
    b_over_n = float(np.var(means, ddof=1))
    if w <= 0.0:
        return 1.0
    var_plus = (n2 - 1) / n2 * w + b_over_n
    return math.sqrt(var_plus / w)


PSRF_WARN = 1.1


@dataclass(frozen=True, slots=True)
class PosteriorSummary:
    """Pooled posterior summaries plus the kept draws behind them.

    Draw arrays are pooled across chains in chain order; shapes are
    (chains*keep, n_treatments) for effects, (chains*keep,) for the rest.
    tau draws are on the analysis scale; banding divides by omega.
    """

    effect: EffectModel
    likelihood: Likelihood
    n_treatments: int
    chains: int
    keep: int
    seed: int
    omega: float
    treatment_effects: dict[int, TreatmentEffect]
    tau: Optional[TauSummary]
    dic: DicSummary
    total_resdev: float
    diagnostics: Diagnostics
    d_draws: np.ndarray
    dnew_draws: Optional[np.ndarray]
    tau_draws: Optional[np.ndarray]
    deviance_draws: np.ndarray
    resdev_draws: np.ndarray

    def to_dict(self, include_traces: bool = False) -> dict:
        out = {
            "effect": self.effect.value,
            "likelihood": self.likelihood.value,
            "n_treatments": self.n_treatments,
            "chains": self.chains,
            "keep": self.keep,
            "seed": self.seed,
            "omega": self.omega,
            "treatment_effects": {
                str(k): v.to_dict() for k, v in sorted(self.treatment_effects.items())
            },
            "tau": self.tau.to_dict() if self.tau else None,
            "dic": self.dic.to_dict(),
            "total_resdev": self.total_resdev,
            "diagnostics": self.diagnostics.to_dict(),
        }
        if include_traces:
            out["traces"] = {
                "d": self.d_draws.tolist(),
                "d_new": self.dnew_draws.tolist() if self.dnew_draws is not None else None,
                "tau": self.tau_draws.tolist() if self.tau_draws is not None else None,
                "deviance": self.deviance_draws.tolist(),
                "residual_deviance": self.resdev_draws.tolist(),
            }
        return out


class SummaryStateError(RuntimeError):
    """Requested a quantity the run's effect structure does not define."""


def posterior_tau_bands(summary: PosteriorSummary) -> BandProbabilities:
    """Band frequencies of the kept tau draws on the log OR scale."""
    if summary.effect is EffectModel.FixedEffect or summary.tau_draws is None:
        raise SummaryStateError("fixed-effect runs have no heterogeneity draws to band")
    return bands_from_sample(summary.tau_draws / summary.omega)


@dataclass(frozen=True, slots=True)
class ContrastResult:
    a: int
    b: int
    d: EffectSummary
    odds_ratio: Optional[EffectSummary]
    predictive: Optional[EffectSummary]
    predictive_odds_ratio: Optional[EffectSummary]

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "d": self.d.to_dict(),
            "odds_ratio": self.odds_ratio.to_dict() if self.odds_ratio else None,
            "predictive": self.predictive.to_dict() if self.predictive else None,
            "predictive_odds_ratio": (
                self.predictive_odds_ratio.to_dict() if self.predictive_odds_ratio else None
            ),
        }


def contrast(summary: PosteriorSummary, a: int, b: int) -> ContrastResult:
    """Per-iteration d[a] - d[b] (and the analogous new-study contrast)."""
    for t in (a, b):
        if not 1 <= t <= summary.n_treatments:
            raise ValueError(f"unknown treatment id {t}, valid ids are 1..{summary.n_treatments}")
    diff = summary.d_draws[:, a - 1] - summary.d_draws[:, b - 1]
    is_or = summary.likelihood is Likelihood.BinomialLogit
    pred = pred_or = None
    if summary.dnew_draws is not None:
        pdiff = summary.dnew_draws[:, a - 1] - summary.dnew_draws[:, b - 1]
        pred = effect_summary(pdiff)
        pred_or = effect_summary(np.exp(pdiff)) if is_or else None
    return ContrastResult(
        a=a,
        b=b,
        d=effect_summary(diff),
        odds_ratio=effect_summary(np.exp(diff)) if is_or else None,
        predictive=pred,
        predictive_odds_ratio=pred_or,
    )


def batch_mean_se(trace: np.ndarray, n_batches: int = 50) -> float:
    """Monte Carlo SE of the trace mean by non-overlapping batch means."""
    n = len(trace)
    size = n // n_batches
    if size < 1:
        raise ValueError("trace too short for the requested batch count")
    means = trace[: size * n_batches].reshape(n_batches, size).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(n_batches))


def quantile_mc_se(per_chain: np.ndarray, q: float) -> float:
    """MC SE of a pooled quantile from per-half-chain quantile spread."""
    chains, n = per_chain.shape
    half = n // 2
    groups = np.concatenate([per_chain[:, :half], per_chain[:, half : 2 * half]], axis=0)
    qs = np.percentile(groups, q, axis=1)
    return float(np.std(qs, ddof=1) / math.sqrt(len(qs)))
