"""Model and sampler configuration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..elicitation import EffectModel, HeterogeneityPrior


@dataclass(frozen=True, slots=True)
class ModelConfig:
    """Effect structure, heterogeneity prior, and vague-prior widths.

    ``tau_fixed`` pins the between-study SD to a constant instead of
    sampling it (0.0 reproduces the fixed-effect model through the
    random-effects path); it is a testing hook, normal runs leave it None.
    """

    effect: EffectModel
    prior: Optional[HeterogeneityPrior] = None
    baseline_prior_sd: float = 100.0
    effect_prior_sd: float = 100.0
    tau_fixed: Optional[float] = None

    def __post_init__(self):
        if self.baseline_prior_sd <= 0 or self.effect_prior_sd <= 0:
            raise ValueError("vague prior sds must be positive")
        if self.tau_fixed is not None and self.tau_fixed < 0:
            raise ValueError("tau_fixed must be >= 0")
        if self.effect is EffectModel.FixedEffect and (self.prior is not None or self.tau_fixed is not None):
            raise ValueError("FixedEffect takes no heterogeneity prior or tau_fixed")
        if self.prior is not None and self.tau_fixed is not None:
            raise ValueError("prior and tau_fixed are mutually exclusive")
        if self.effect is EffectModel.RandomEffects and self.prior is None and self.tau_fixed is None:
            raise ValueError("RandomEffects requires a heterogeneity prior")


@dataclass(frozen=True, slots=True)
class McmcConfig:
    burn_in: int = 60_000
    keep: int = 40_000
    thin: int = 1
    chains: int = 2
    seed: int = 1
    adapt_target: float = 0.44

    def __post_init__(self):
        if self.burn_in < 1 or self.keep < 1:
            raise ValueError("burn_in and keep must be >= 1")
        if self.thin < 1:
            raise ValueError("thin must be >= 1")
        if self.chains < 1:
            raise ValueError("need at least one chain")
        if not 0.0 < self.adapt_target < 1.0:
            raise ValueError("adapt_target must lie in (0, 1)")
