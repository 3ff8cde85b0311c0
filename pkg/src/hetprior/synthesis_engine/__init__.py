"""Bayesian network meta-analysis by Metropolis-within-Gibbs sampling."""

from ..elicitation import EffectModel
from .config import McmcConfig, ModelConfig
from .data import (
    BinomialArm,
    Likelihood,
    NormalArm,
    Study,
    TrialDataset,
    flatten,
)
from .engine import McmcState, deviance, run_mcmc
from .summaries import (
    ContrastResult,
    Diagnostics,
    DicSummary,
    EffectSummary,
    PosteriorSummary,
    SummaryStateError,
    TauSummary,
    TreatmentEffect,
    batch_mean_se,
    contrast,
    dic,
    effect_summary,
    posterior_tau_bands,
    quantile_mc_se,
    split_chain_psrf,
)

__all__ = [
    "BinomialArm",
    "ContrastResult",
    "Diagnostics",
    "DicSummary",
    "EffectModel",
    "EffectSummary",
    "Likelihood",
    "McmcConfig",
    "McmcState",
    "ModelConfig",
    "NormalArm",
    "PosteriorSummary",
    "Study",
    "SummaryStateError",
    "TauSummary",
    "TreatmentEffect",
    "TrialDataset",
    "batch_mean_se",
    "contrast",
    "deviance",
    "dic",
    "effect_summary",
    "flatten",
    "posterior_tau_bands",
    "quantile_mc_se",
    "run_mcmc",
    "split_chain_psrf",
]
