"""Runs the MCMC kernel over a dataset and assembles posterior summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..dist_core import RngStream
from ..elicitation import (
    EffectModel,
    ElicitedRatio,
    FitFamily,
    HalfNormalTau,
    HeterogeneityPrior,
    LogNormalTauSq,
    ScaleKind,
    TruncatedLogNormalTauSq,
    UniformTau,
    bands_from_sample,
)
from . import kernel as K
from .config import McmcConfig, ModelConfig
from .data import BinomialArm, FlatData, Likelihood, TrialDataset, flatten
from .summaries import (
    PSRF_WARN,
    Diagnostics,
    DicSummary,
    PosteriorSummary,
    TauSummary,
    TreatmentEffect,
    dic as dic_summary,
    effect_summary,
    split_chain_psrf,
)


@dataclass(frozen=True, slots=True)
class McmcState:
    """One sampler state; delta holds realized per-arm effects (control arms 0).

    Fixed-effect states carry the deterministic differences in delta, so
    deviance evaluation is uniform across effect structures.
    """

    mu: np.ndarray
    delta: np.ndarray
    d: np.ndarray
    tau: float = 0.0
    aux_g: Optional[float] = None


def _linear_predictors(data: TrialDataset, state: McmcState) -> np.ndarray:
    out = []
    a = 0
    for i, study in enumerate(data.studies):
        for _ in study.arms:
            out.append(state.mu[i] + state.delta[a])
            a += 1
    return np.asarray(out)


def deviance(data: TrialDataset, state: McmcState) -> tuple[np.ndarray, float]:
    """Per-arm and total residual deviance against the saturated model."""
    lin = _linear_predictors(data, state)
    devs = []
    a = 0
    for study in data.studies:
        for arm in study.arms:
            if data.likelihood is Likelihood.BinomialLogit:
                p = 1.0 / (1.0 + math.exp(-lin[a]))
                rhat = p * arm.size
                term = 0.0
                if arm.events > 0:
                    term += arm.events * (math.log(arm.events) - math.log(rhat))
                if arm.size - arm.events > 0:
                    term += (arm.size - arm.events) * (
                        math.log(arm.size - arm.events) - math.log(arm.size - rhat)
                    )
                devs.append(2.0 * term)
            else:
                devs.append(((arm.mean - lin[a]) / arm.se) ** 2)
            a += 1
    per_arm = np.asarray(devs)
    return per_arm, float(per_arm.sum())


def _prior_to_kernel(prior: HeterogeneityPrior) -> tuple[int, float, float, float, float, float, float]:
    """(kind, pa, pb, pc, latent lower, latent upper, initial latent)."""
    v = prior.variant
    if isinstance(v, UniformTau):
        return (K.PRIOR_UNIFORM_TAU, v.lower, v.upper, 0.0, v.lower, v.upper,
                0.5 * (v.lower + v.upper))
    if isinstance(v, HalfNormalTau):
        return (K.PRIOR_HALFNORMAL_TAU, v.sd, 0.0, 0.0, 0.0, math.inf, 0.5 * v.sd)
    if isinstance(v, LogNormalTauSq):
        return (K.PRIOR_LOGNORMAL_TAUSQ, v.m, v.v, 0.0, -math.inf, math.inf, v.m)
    if isinstance(v, TruncatedLogNormalTauSq):
        hi = math.log(v.upper)
        return (K.PRIOR_TRUNC_LOGNORMAL, v.m, v.v, v.upper, -math.inf, hi, min(v.m, hi - 0.5))
    fit = v.fit
    if fit.family is FitFamily.GammaOnRminus1:
        shape, rate = fit.distribution.shape, fit.distribution.rate
        return (K.PRIOR_ELICITED_GAMMA, shape, rate, fit.shift, -math.inf, math.inf,
                math.log(shape / rate))
    return (K.PRIOR_ELICITED_LOGNORMAL, fit.distribution.log_mean,
            fit.distribution.log_sd ** 2, fit.shift, -math.inf, math.inf,
            fit.distribution.log_mean)


def _check_compatibility(data: TrialDataset, prior: HeterogeneityPrior) -> None:
    kind = prior.scale.kind
    if data.likelihood is Likelihood.BinomialLogit:
        if kind is not ScaleKind.LogOR:
            raise ValueError(
                f"binomial-logit data works on the log OR scale, prior is on {kind.value}"
            )
    else:
        if prior.scale.is_ratio:
            raise ValueError(
                f"normal-identity data needs a difference-type scale, prior is on {kind.value}"
            )
        if (
            kind is ScaleKind.MeanDifference
            and data.sigma_individual is not None
            and not math.isclose(prior.scale.sigma, data.sigma_individual)
        ):
            raise ValueError(
                f"prior sigma {prior.scale.sigma} disagrees with dataset "
                f"sigma_individual {data.sigma_individual}"
            )


def _initial_state(data: TrialDataset, flat: FlatData) -> tuple[np.ndarray, np.ndarray]:
    ns = data.n_studies
    mu0 = np.zeros(ns)
    delta0 = np.zeros(len(flat.arm_t))
    a = 0
    for i, study in enumerate(data.studies):
        for j, arm in enumerate(study.arms):
            if isinstance(arm, BinomialArm):
                val = math.log((arm.events + 0.5) / (arm.size - arm.events + 0.5))
            else:
                val = arm.mean
            if j == 0:
                mu0[i] = val
            else:
                delta0[a] = val - mu0[i]
            a += 1
    return mu0, delta0


def _parameter_labels(data: TrialDataset, effect_mode: int, sample_tau: bool) -> list[str]:
    labels = [f"mu[{i + 1}]" for i in range(data.n_studies)]
    if effect_mode == K.RANDOM_EFFECTS:
        for i, study in enumerate(data.studies):
            for k in range(2, len(study.arms) + 1):
                labels.append(f"delta[{i + 1},{k}]")
    labels.extend(f"d[{k}]" for k in range(2, data.n_treatments + 1))
    if sample_tau:
        labels.append("tau")
    return labels


def _plug_in_deviance(data: TrialDataset, flat: FlatData, param_means: np.ndarray) -> float:
    dev = 0.0
    for a in range(len(flat.arm_t)):
        if data.likelihood is Likelihood.BinomialLogit:
            r, n, p = flat.arm_x1[a], flat.arm_x2[a], param_means[a]
            dev += -2.0 * (flat.arm_const[a] + r * math.log(p) + (n - r) * math.log(1.0 - p))
        else:
            z = (flat.arm_x1[a] - param_means[a]) / flat.arm_x2[a]
            dev += z * z + flat.arm_const[a]
    return dev


def run_mcmc(data: TrialDataset, model: ModelConfig, mcmc: McmcConfig) -> PosteriorSummary:
    """Sample the posterior and summarize it (quantiles pooled across chains)."""
    flat = flatten(data)
    like_kind = K.BINOMIAL_LOGIT if data.likelihood is Likelihood.BinomialLogit else K.NORMAL_IDENTITY
    nt = data.n_treatments

    random_effects = model.effect is EffectModel.RandomEffects
    omega = model.prior.omega if model.prior is not None else 1.0

    if random_effects and model.prior is not None:
        _check_compatibility(data, model.prior)

    # tau_fixed = 0 collapses the multi-arm recursion to the fixed-effect
    # path exactly, so reuse that kernel and dress the output as RE.
    pinned_zero = random_effects and model.tau_fixed == 0.0
    effect_mode = K.RANDOM_EFFECTS if (random_effects and not pinned_zero) else K.FIXED_EFFECT
    sample_tau = random_effects and not pinned_zero and model.tau_fixed is None

    if sample_tau:
        prior_kind, pa, pb, pc, lat_lo, lat_hi, latent0 = _prior_to_kernel(model.prior)
        tau0 = float(K._tau_from_latent(prior_kind, latent0, pa, pb, pc, omega))
    else:
        prior_kind, pa, pb, pc, lat_lo, lat_hi, latent0 = K.PRIOR_NONE, 0.0, 0.0, 0.0, -math.inf, math.inf, 0.0
        tau0 = float(model.tau_fixed) if (random_effects and model.tau_fixed) else 0.0

    mu0, delta0 = _initial_state(data, flat)
    labels = _parameter_labels(data, effect_mode, sample_tau)
    npar = len(labels)

    keep = mcmc.keep
    d_chains = np.zeros((mcmc.chains, keep, nt))
    tau_chains = np.zeros((mcmc.chains, keep))
    dnew_chains = np.zeros((mcmc.chains, keep, nt))
    dev_chains = np.zeros((mcmc.chains, keep))
    resdev_chains = np.zeros((mcmc.chains, keep))
    param_sum = np.zeros(len(flat.arm_t))
    acc = np.zeros((mcmc.chains, npar))
    steps = np.zeros((mcmc.chains, npar))

    for c in range(mcmc.chains):
        rng = RngStream(mcmc.seed, c).generator()
        chain_param_sum = np.zeros(len(flat.arm_t))
        K.run_chain(
            like_kind, effect_mode,
            flat.study_start, flat.arm_study, flat.arm_t, flat.arm_x1, flat.arm_x2,
            flat.arm_const, nt, flat.treat_start, flat.treat_studies,
            prior_kind, pa, pb, pc, lat_lo, lat_hi, omega,
            model.baseline_prior_sd, model.effect_prior_sd,
            mcmc.burn_in, keep, mcmc.thin, mcmc.adapt_target,
            sample_tau, latent0, tau0,
            mu0, delta0, rng,
            d_chains[c], tau_chains[c], dnew_chains[c], dev_chains[c], resdev_chains[c],
            chain_param_sum, acc[c], steps[c],
        )
        param_sum += chain_param_sum / keep

    d_draws = d_chains.reshape(-1, nt)
    dev_draws = dev_chains.reshape(-1)
    resdev_draws = resdev_chains.reshape(-1)
    param_means = param_sum / mcmc.chains

    if random_effects:
        if pinned_zero:
            tau_draws = np.zeros(mcmc.chains * keep)
            dnew_draws = d_draws.copy()
        elif model.tau_fixed is not None:
            tau_chains[:] = model.tau_fixed
            tau_draws = tau_chains.reshape(-1)
            dnew_draws = dnew_chains.reshape(-1, nt)
        else:
            tau_draws = tau_chains.reshape(-1)
            dnew_draws = dnew_chains.reshape(-1, nt)
    else:
        tau_draws = None
        dnew_draws = None

    is_or = data.likelihood is Likelihood.BinomialLogit
    effects = {}
    for k in range(2, nt + 1):
        dk = d_draws[:, k - 1]
        pred = pred_or = None
        if dnew_draws is not None:
            pk = dnew_draws[:, k - 1]
            pred = effect_summary(pk)
            pred_or = effect_summary(np.exp(pk)) if is_or else None
        effects[k] = TreatmentEffect(
            treatment=k,
            d=effect_summary(dk),
            odds_ratio=effect_summary(np.exp(dk)) if is_or else None,
            predictive=pred,
            predictive_odds_ratio=pred_or,
        )

    tau_summary = None
    if tau_draws is not None:
        med, lo, hi = np.percentile(tau_draws, [50.0, 2.5, 97.5])
        tau_summary = TauSummary(
            median=float(med), lower=float(lo), upper=float(hi),
            bands=bands_from_sample(tau_draws / omega),
        )

    dic = dic_summary(dev_draws, _plug_in_deviance(data, flat, param_means))

    acceptance = {labels[p]: float(acc[:, p].mean()) for p in range(npar)}
    psrf: dict[str, float] = {}
    warnings: list[str] = []
    for k in range(2, nt + 1):
        psrf[f"d[{k}]"] = split_chain_psrf(d_chains[:, :, k - 1].reshape(mcmc.chains, keep))
    if sample_tau:
        psrf["tau"] = split_chain_psrf(tau_chains)
    for name, value in psrf.items():
        if not math.isnan(value) and value > PSRF_WARN:
            warnings.append(f"PSRF {value:.3f} for {name} exceeds {PSRF_WARN}; chains may not have converged")
    if dic.p_d < 0:
        warnings.append(f"negative effective parameter count p_d={dic.p_d:.3f}")

    return PosteriorSummary(
        effect=model.effect,
        likelihood=data.likelihood,
        n_treatments=nt,
        chains=mcmc.chains,
        keep=keep,
        seed=mcmc.seed,
        omega=omega,
        treatment_effects=effects,
        tau=tau_summary,
        dic=dic,
        total_resdev=float(resdev_draws.mean()),
        diagnostics=Diagnostics(acceptance=acceptance, psrf=psrf, warnings=tuple(warnings)),
        d_draws=d_draws,
        dnew_draws=dnew_draws,
        tau_draws=tau_draws,
        deviance_draws=dev_draws,
        resdev_draws=resdev_draws,
    )
