"""Shared fixtures.

The posterior-run fixtures are session scoped and use the default sampler
settings: the kernel is compiled once (and disk-cached), so each full run
costs about a second, and every module then asserts against the same draws.
"""

from __future__ import annotations

import pytest

from hetprior.elicitation import (
    TURNER_M,
    TURNER_SD,
    ElicitedRatio,
    HeterogeneityPrior,
    OutcomeScale,
    ScaleKind,
    TruncatedLogNormalTauSq,
    UniformTau,
    fit_ratio,
    turner_truncation_upper,
)
from hetprior.ingest_report import fixtures
from hetprior.synthesis_engine import EffectModel, McmcConfig, ModelConfig, run_mcmc


@pytest.fixture(scope="session")
def ta163():
    return fixtures.dataset("ta163")


@pytest.fixture(scope="session")
def ta336():
    return fixtures.dataset("ta336")


@pytest.fixture(scope="session")
def chips_ta163():
    return fixtures.chips("ta163")


@pytest.fixture(scope="session")
def chips_ta336():
    return fixtures.chips("ta336")


@pytest.fixture(scope="session")
def or_scale():
    return OutcomeScale(ScaleKind.LogOR)


@pytest.fixture(scope="session")
def md_scale():
    return OutcomeScale(ScaleKind.MeanDifference, sigma=2.61)


@pytest.fixture(scope="session")
def fit_ta163(chips_ta163):
    return fit_ratio(chips_ta163)


@pytest.fixture(scope="session")
def fit_ta336(chips_ta336):
    return fit_ratio(chips_ta336)


@pytest.fixture(scope="session")
def prior_elicited_ta163(fit_ta163, or_scale):
    return HeterogeneityPrior(variant=ElicitedRatio(fit=fit_ta163), scale=or_scale)


@pytest.fixture(scope="session")
def prior_elicited_ta336(fit_ta336, md_scale):
    return HeterogeneityPrior(variant=ElicitedRatio(fit=fit_ta336), scale=md_scale)


@pytest.fixture(scope="session")
def mcmc_default():
    return McmcConfig()


@pytest.fixture(scope="session")
def post_ta163_fe(ta163, mcmc_default):
    return run_mcmc(ta163, ModelConfig(effect=EffectModel.FixedEffect), mcmc_default)


@pytest.fixture(scope="session")
def post_ta163_uniform(ta163, or_scale, mcmc_default):
    model = ModelConfig(
        effect=EffectModel.RandomEffects,
        prior=HeterogeneityPrior(variant=UniformTau(0.0, 5.0), scale=or_scale),
    )
    return run_mcmc(ta163, model, mcmc_default)


@pytest.fixture(scope="session")
def post_ta163_truncated(ta163, or_scale, mcmc_default):
    variant = TruncatedLogNormalTauSq(
        m=TURNER_M, v=TURNER_SD**2, upper=turner_truncation_upper(10.0)
    )
    model = ModelConfig(
        effect=EffectModel.RandomEffects,
        prior=HeterogeneityPrior(variant=variant, scale=or_scale),
    )
    return run_mcmc(ta163, model, mcmc_default)


@pytest.fixture(scope="session")
def post_ta163_elicited(ta163, prior_elicited_ta163, mcmc_default):
    model = ModelConfig(effect=EffectModel.RandomEffects, prior=prior_elicited_ta163)
    return run_mcmc(ta163, model, mcmc_default)


@pytest.fixture(scope="session")
def post_ta163_tau_zero(ta163, mcmc_default):
    model = ModelConfig(effect=EffectModel.RandomEffects, tau_fixed=0.0)
    return run_mcmc(ta163, model, mcmc_default)


@pytest.fixture(scope="session")
def post_ta336_fe(ta336, mcmc_default):
    return run_mcmc(ta336, ModelConfig(effect=EffectModel.FixedEffect), mcmc_default)


@pytest.fixture(scope="session")
def post_ta336_elicited(ta336, prior_elicited_ta336, mcmc_default):
    model = ModelConfig(effect=EffectModel.RandomEffects, prior=prior_elicited_ta336)
    return run_mcmc(ta336, model, mcmc_default)
