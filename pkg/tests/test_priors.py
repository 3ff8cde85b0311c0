"""Heterogeneity prior variants: exact band probabilities against closed
forms, Monte Carlo agreement, scale conversion, and serialization."""

import math

import numpy as np
import pytest
import scipy.special as sc

from hetprior.dist_core import RngStream
from hetprior.elicitation import (
    TURNER_M,
    TURNER_SD,
    BandProbabilities,
    ElicitedRatio,
    HalfNormalTau,
    HeterogeneityPrior,
    LogNormalTauSq,
    OutcomeScale,
    ScaleKind,
    TruncatedLogNormalTauSq,
    UniformTau,
    UnsupportedDefaultError,
    band_probabilities_exact,
    bands_from_sample,
    empirical_default_prior,
    feedback_density,
    fit_ratio,
    prior_band_probabilities,
    turner_truncation_upper,
)

OR = OutcomeScale(ScaleKind.LogOR)
EDGES = (0.1, 0.5, 1.0)


def normal_cdf(x):
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def bands_from_cdf(cdf):
    c = [cdf(e) for e in EDGES]
    return (c[0], c[1] - c[0], c[2] - c[1], 1.0 - c[2])


def variant_oracles(fit):
    """(prior, closed-form cdf of tau_OR) pairs for every variant."""
    upper = turner_truncation_upper(10.0)
    trunc_mass = normal_cdf((math.log(upper) - TURNER_M) / TURNER_SD)

    def lognormal_cdf(t):
        return normal_cdf((2.0 * math.log(t) - TURNER_M) / TURNER_SD)

    g = fit.distribution
    return [
        (
            HeterogeneityPrior(UniformTau(0.0, 5.0), OR),
            lambda t: min(t / 5.0, 1.0),
        ),
        (
            HeterogeneityPrior(HalfNormalTau(0.5), OR),
            lambda t: math.erf(t / (0.5 * math.sqrt(2.0))),
        ),
        (
            HeterogeneityPrior(LogNormalTauSq(TURNER_M, TURNER_SD**2), OR),
            lognormal_cdf,
        ),
        (
            HeterogeneityPrior(TruncatedLogNormalTauSq(TURNER_M, TURNER_SD**2, upper), OR),
            lambda t: min(lognormal_cdf(t) / trunc_mass, 1.0),
        ),
        (
            HeterogeneityPrior(ElicitedRatio(fit), OR),
            lambda t: sc.gammainc(g.shape, g.rate * (math.exp(3.92 * t) - 1.0)),
        ),
    ]


def test_uniform_bands_are_exact():
    bands = band_probabilities_exact(HeterogeneityPrior(UniformTau(0.0, 5.0), OR))
    assert bands.p_low == pytest.approx(0.02, abs=1e-12)
    assert bands.p_moderate == pytest.approx(0.08, abs=1e-12)
    assert bands.p_high == pytest.approx(0.10, abs=1e-12)
    assert bands.p_extreme == pytest.approx(0.80, abs=1e-12)


def test_exact_bands_match_closed_forms(fit_ta163):
    for prior, cdf in variant_oracles(fit_ta163):
        got = band_probabilities_exact(prior).as_tuple()
        want = bands_from_cdf(cdf)
        assert got == pytest.approx(want, abs=1e-9), prior.variant


def test_monte_carlo_bands_agree_with_exact(fit_ta163):
    n = 100_000
    for i, (prior, _) in enumerate(variant_oracles(fit_ta163)):
        exact = band_probabilities_exact(prior).as_tuple()
        mc = prior_band_probabilities(prior, n, RngStream(77, i)).as_tuple()
        for p_mc, p in zip(mc, exact):
            se = math.sqrt(max(p * (1.0 - p), 1e-12) / n)
            assert abs(p_mc - p) <= 4.0 * se, prior.variant


def test_bands_sum_to_one(fit_ta163):
    for prior, _ in variant_oracles(fit_ta163):
        assert sum(band_probabilities_exact(prior).as_tuple()) == pytest.approx(1.0, abs=1e-9)


def test_monte_carlo_bands_need_enough_draws():
    prior = HeterogeneityPrior(UniformTau(0.0, 5.0), OR)
    with pytest.raises(ValueError):
        prior_band_probabilities(prior, 9_999, RngStream(1, 0))


def test_truncated_prior_respects_the_hard_bound():
    upper = turner_truncation_upper(10.0)
    prior = HeterogeneityPrior(TruncatedLogNormalTauSq(TURNER_M, TURNER_SD**2, upper), OR)
    draws = prior.sample_tau_or(RngStream(3, 0), 50_000)
    assert draws.max() ** 2 <= upper
    assert prior.cdf_tau_or(math.sqrt(upper)) == pytest.approx(1.0, abs=1e-12)
    assert band_probabilities_exact(prior).p_extreme == 0.0


def test_elicited_prior_support_starts_at_the_lower_edge():
    from hetprior.elicitation import ChipAllocation

    fit = fit_ratio(ChipAllocation(2.0, 11.0, 9, (4, 5, 6, 6, 5, 4, 2, 1, 1), 34))
    prior = HeterogeneityPrior(ElicitedRatio(fit), OR)
    draws = prior.sample_tau_or(RngStream(4, 0), 20_000)
    assert draws.min() >= math.log(2.0) / 3.92


def test_omega_rescales_bands_and_samples():
    md = OutcomeScale(ScaleKind.MeanDifference, sigma=2.61)
    prior = HeterogeneityPrior(UniformTau(0.0, 5.0), md)
    # the variant lives on the analysis scale; tau_OR divides by omega
    bands = band_probabilities_exact(prior)
    assert bands.p_low == pytest.approx(0.1 * md.omega / 5.0, rel=1e-9)
    analysis = prior.sample_tau_analysis(RngStream(5, 0), 20_000)
    or_draws = prior.sample_tau_or(RngStream(5, 0), 20_000)
    assert analysis.max() <= 5.0
    assert or_draws.max() <= 5.0 / md.omega + 1e-12
    assert np.quantile(analysis, 0.5) == pytest.approx(
        np.quantile(or_draws, 0.5) * md.omega, rel=0.05
    )


def test_serialization_roundtrip(fit_ta163):
    grid = np.linspace(0.01, 3.0, 40)
    for prior, _ in variant_oracles(fit_ta163):
        clone = HeterogeneityPrior.from_dict(prior.to_dict())
        assert clone.scale == prior.scale
        for t in grid:
            assert clone.cdf_tau_or(t) == pytest.approx(prior.cdf_tau_or(t), abs=1e-12)


def test_cdf_is_monotone(fit_ta163):
    grid = np.linspace(1e-4, 4.0, 60)
    for prior, _ in variant_oracles(fit_ta163):
        values = [prior.cdf_tau_or(t) for t in grid]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_feedback_density_is_a_density(fit_ta163):
    prior = HeterogeneityPrior(ElicitedRatio(fit_ta163), OR)
    fb = feedback_density(prior, 50_000, RngStream(9, 0))
    assert len(fb.bin_edges) == len(fb.density) + 1
    assert all(b > a for a, b in zip(fb.bin_edges, fb.bin_edges[1:]))
    widths = np.diff(np.asarray(fb.bin_edges))
    mass = float(np.sum(np.asarray(fb.density) * widths))
    assert 0.9 < mass <= 1.0 + 1e-9
    assert len(fb.sample) == 50_000


def test_bands_from_sample_counts_boundaries_upward():
    sample = np.array([0.05, 0.1, 0.49, 0.5, 0.99, 1.0, 1.5, 0.01])
    bands = bands_from_sample(sample)
    assert bands.as_tuple() == pytest.approx((2 / 8, 2 / 8, 2 / 8, 2 / 8))


def test_band_probabilities_container():
    b = BandProbabilities(0.1, 0.2, 0.3, 0.4)
    assert b.as_tuple() == (0.1, 0.2, 0.3, 0.4)
    assert b.to_dict() == {"low": 0.1, "moderate": 0.2, "high": 0.3, "extreme": 0.4}


def test_empirical_default_prior():
    prior = empirical_default_prior(OR)
    assert prior.variant == LogNormalTauSq(TURNER_M, TURNER_SD**2)
    assert TURNER_M == -2.56 and TURNER_SD == 1.74
    probit = empirical_default_prior(OutcomeScale(ScaleKind.Probit))
    assert probit.scale.kind is ScaleKind.Probit
    with pytest.raises(UnsupportedDefaultError):
        empirical_default_prior(OutcomeScale(ScaleKind.LogHR))
    with pytest.raises(UnsupportedDefaultError):
        empirical_default_prior(OutcomeScale(ScaleKind.LogRoM))
