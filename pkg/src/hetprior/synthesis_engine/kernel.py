"""JIT-compiled Metropolis-within-Gibbs kernel for the arm-level NMA model.

Model (per chain):
    binomial:  r[i,k] ~ Bin(p[i,k], n[i,k]),  logit p = mu[i] + delta[i,k]
    normal:    y[i,k] ~ N(mu[i] + delta[i,k], se[i,k]^2)
    fixed effect:   delta[i,k] = d[t[i,k]] - d[t[i,1]]
    random effects: delta[i,k] ~ N(d[t[i,k]] - d[t[i,1]] + sw[i,k],
                                   tau^2 * k / (2(k-1)))
    with the cumulative multi-arm adjustment
        w[i,k]  = delta[i,k] - d[t[i,k]] + d[t[i,1]]
        sw[i,k] = sum_j<k w[i,j] / (k-1)
    and vague N(0, 100^2) priors on mu[i] and d[k] (d[1] = 0).

tau is sampled through a variant-specific latent coordinate (tau itself,
log tau^2, or the log of the elicited ratio excess G) with reflection at
finite support bounds.  Every parameter gets a scalar random-walk
proposal whose step adapts toward a target acceptance rate during
burn-in only.

Studies are flattened into arm arrays (study_start offsets) so the
kernel is shape-generic.  All randomness comes from the caller's
Generator, so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# likelihoods
BINOMIAL_LOGIT = 0
NORMAL_IDENTITY = 1

# effect structure
FIXED_EFFECT = 0
RANDOM_EFFECTS = 1

# tau prior kinds (latent parameterizations)
PRIOR_NONE = 0
PRIOR_UNIFORM_TAU = 1       # latent = tau (analysis scale), flat on [pa, pb]
PRIOR_LOGNORMAL_TAUSQ = 2   # latent = log tau_or^2 ~ N(pa, pb)
PRIOR_TRUNC_LOGNORMAL = 3   # as above, reflected at log(pc)
PRIOR_ELICITED_GAMMA = 4    # latent = log G, G ~ Gamma(pa, pb), shift pc
PRIOR_ELICITED_LOGNORMAL = 5  # latent = log G ~ N(pa, pb), shift pc
PRIOR_HALFNORMAL_TAU = 6    # latent = tau (analysis scale), half-N(0, pa^2)


@njit(cache=True, inline="always")
def _log1pexp(x):
    # log(1 + e^x) without overflow
    if x > 35.0:
        return x
    return math.log1p(math.exp(x))


@njit(cache=True)
def _tau_from_latent(kind, latent, pa, pb, pc, omega):
    if kind == PRIOR_UNIFORM_TAU or kind == PRIOR_HALFNORMAL_TAU:
        return latent
    if kind == PRIOR_LOGNORMAL_TAUSQ or kind == PRIOR_TRUNC_LOGNORMAL:
        return omega * math.exp(0.5 * latent)
    # elicited ratio: tau_or = log(shift + G) / 3.92
    if pc == 1.0:
        return omega * _log1pexp(latent) / 3.92
    return omega * (math.log(pc) + _log1pexp(latent - math.log(pc))) / 3.92


@njit(cache=True)
def _latent_logprior(kind, latent, pa, pb, pc):
    if kind == PRIOR_LOGNORMAL_TAUSQ or kind == PRIOR_TRUNC_LOGNORMAL:
        return -0.5 * (latent - pa) ** 2 / pb
    if kind == PRIOR_ELICITED_GAMMA:
        # density of y = log G when G ~ Gamma(shape=pa, rate=pb)
        return pa * latent - pb * math.exp(latent)
    if kind == PRIOR_ELICITED_LOGNORMAL:
        return -0.5 * (latent - pa) ** 2 / pb
    if kind == PRIOR_HALFNORMAL_TAU:
        return -0.5 * latent * latent / (pa * pa)
    return 0.0


@njit(cache=True, inline="always")
def _fold(x, lo, hi):
    # reflect a proposal into [lo, hi]; symmetric, so MH ratio is unchanged
    for _ in range(64):
        if x < lo:
            x = 2.0 * lo - x
        elif x > hi:
            x = 2.0 * hi - x
        else:
            break
    return x


@njit(cache=True)
def _study_contrib(i, like_kind, effect_mode, study_start, arm_t, arm_x1, arm_x2,
                   mu, delta, d, tau, baseline_sd):
    """log-likelihood of study i plus its mu and delta prior terms."""
    s = study_start[i]
    e = study_start[i + 1]
    t1 = arm_t[s]
    ll = -0.5 * mu[i] * mu[i] / (baseline_sd * baseline_sd)
    for a in range(s, e):
        if effect_mode == FIXED_EFFECT:
            dl = d[arm_t[a]] - d[t1]
        else:
            dl = delta[a]
        lin = mu[i] + dl
        if like_kind == BINOMIAL_LOGIT:
            r = arm_x1[a]
            n = arm_x2[a]
            ll += -r * _log1pexp(-lin) - (n - r) * _log1pexp(lin)
        else:
            z = (arm_x1[a] - lin) / arm_x2[a]
            ll += -0.5 * z * z
    if effect_mode == RANDOM_EFFECTS:
        tau2 = tau * tau
        wsum = 0.0
        k = 1
        for a in range(s + 1, e):
            k += 1
            sw = wsum / (k - 1)
            md = d[arm_t[a]] - d[t1] + sw
            var = tau2 * k / (2.0 * (k - 1))
            resid = delta[a] - md
            ll += -0.5 * (resid * resid / var + math.log(var))
            wsum += delta[a] - d[arm_t[a]] + d[t1]
    return ll


@njit(cache=True)
def _full_deviance(like_kind, effect_mode, ns, study_start, arm_t, arm_x1, arm_x2,
                   arm_const, mu, delta, d):
    """-2 log L with all normalizing constants (DIC deviance)."""
    dev = 0.0
    for i in range(ns):
        s = study_start[i]
        e = study_start[i + 1]
        t1 = arm_t[s]
        for a in range(s, e):
            if effect_mode == FIXED_EFFECT:
                dl = d[arm_t[a]] - d[t1]
            else:
                dl = delta[a]
            lin = mu[i] + dl
            if like_kind == BINOMIAL_LOGIT:
                r = arm_x1[a]
                n = arm_x2[a]
                dev += -2.0 * (arm_const[a] - r * _log1pexp(-lin) - (n - r) * _log1pexp(lin))
            else:
                z = (arm_x1[a] - lin) / arm_x2[a]
                dev += z * z + arm_const[a]
    return dev


@njit(cache=True)
def _residual_deviance(like_kind, effect_mode, ns, study_start, arm_t, arm_x1, arm_x2,
                       mu, delta, d):
    """Saturated-model deviance (no constants; 0 log 0 taken as 0)."""
    dev = 0.0
    for i in range(ns):
        s = study_start[i]
        e = study_start[i + 1]
        t1 = arm_t[s]
        for a in range(s, e):
            if effect_mode == FIXED_EFFECT:
                dl = d[arm_t[a]] - d[t1]
            else:
                dl = delta[a]
            lin = mu[i] + dl
            if like_kind == BINOMIAL_LOGIT:
                r = arm_x1[a]
                n = arm_x2[a]
                p = 1.0 / (1.0 + math.exp(-lin))
                rhat = p * n
                term = 0.0
                if r > 0.0:
                    term += r * (math.log(r) - math.log(rhat))
                if n - r > 0.0:
                    term += (n - r) * (math.log(n - r) - math.log(n - rhat))
                dev += 2.0 * term
            else:
                z = (arm_x1[a] - lin) / arm_x2[a]
                dev += z * z
    return dev


@njit(cache=True)
def run_chain(like_kind, effect_mode,
              study_start, arm_study, arm_t, arm_x1, arm_x2, arm_const,
              nt, treat_start, treat_studies,
              prior_kind, pa, pb, pc, lat_lo, lat_hi, omega,
              baseline_sd, effect_sd,
              burn_in, keep, thin, adapt_target,
              sample_tau, latent0, tau0,
              mu0, delta0,
              rng,
              d_out, tau_out, dnew_out, dev_out, resdev_out,
              param_sum_out, acc_out, step_out):
    ns = study_start.shape[0] - 1
    total_arms = arm_t.shape[0]

    mu = mu0.copy()
    delta = delta0.copy()
    d = np.zeros(nt)
    latent = latent0
    tau = tau0

    # sampled delta coordinates: every non-control arm (random effects only)
    n_delta = 0
    if effect_mode == RANDOM_EFFECTS:
        n_delta = total_arms - ns
    delta_arms = np.empty(n_delta, np.int64)
    j = 0
    if effect_mode == RANDOM_EFFECTS:
        for i in range(ns):
            for a in range(study_start[i] + 1, study_start[i + 1]):
                delta_arms[j] = a
                j += 1

    npar = ns + n_delta + (nt - 1) + (1 if sample_tau else 0)
    step = np.full(npar, 0.5)
    if sample_tau:
        step[npar - 1] = 1.0
    acc_batch = np.zeros(npar)
    acc_kept = np.zeros(npar)

    batch_size = 50
    batch_num = 0
    n_iter = burn_in + keep * thin

    for it in range(n_iter):
        adapting = it < burn_in
        ip = 0

        # per-study baselines
        for i in range(ns):
            cur = _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                 arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            old = mu[i]
            mu[i] = old + step[ip] * rng.standard_normal()
            new = _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                 arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            diff = new - cur
            if not math.isnan(diff) and math.log(rng.random()) < diff:
                acc_batch[ip] += 1.0
            else:
                mu[i] = old
            ip += 1

        # per-arm trial effects (random effects only)
        for jj in range(n_delta):
            a = delta_arms[jj]
            i = arm_study[a]
            cur = _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                 arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            old = delta[a]
            delta[a] = old + step[ip] * rng.standard_normal()
            new = _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                 arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            diff = new - cur
            if not math.isnan(diff) and math.log(rng.random()) < diff:
                acc_batch[ip] += 1.0
            else:
                delta[a] = old
            ip += 1

        # pooled treatment effects (d[0] pinned at 0)
        for m in range(1, nt):
            cur = -0.5 * d[m] * d[m] / (effect_sd * effect_sd)
            for q in range(treat_start[m], treat_start[m + 1]):
                cur += _study_contrib(treat_studies[q], like_kind, effect_mode, study_start,
                                      arm_t, arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            old = d[m]
            d[m] = old + step[ip] * rng.standard_normal()
            new = -0.5 * d[m] * d[m] / (effect_sd * effect_sd)
            for q in range(treat_start[m], treat_start[m + 1]):
                new += _study_contrib(treat_studies[q], like_kind, effect_mode, study_start,
                                      arm_t, arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            diff = new - cur
            if not math.isnan(diff) and math.log(rng.random()) < diff:
                acc_batch[ip] += 1.0
            else:
                d[m] = old
            ip += 1

        # heterogeneity latent
        if sample_tau:
            cur = _latent_logprior(prior_kind, latent, pa, pb, pc)
            for i in range(ns):
                cur += _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                      arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            old_lat = latent
            old_tau = tau
            latent = _fold(latent + step[ip] * rng.standard_normal(), lat_lo, lat_hi)
            tau = _tau_from_latent(prior_kind, latent, pa, pb, pc, omega)
            new = _latent_logprior(prior_kind, latent, pa, pb, pc)
            for i in range(ns):
                new += _study_contrib(i, like_kind, effect_mode, study_start, arm_t,
                                      arm_x1, arm_x2, mu, delta, d, tau, baseline_sd)
            diff = new - cur
            if not math.isnan(diff) and math.log(rng.random()) < diff:
                acc_batch[ip] += 1.0
            else:
                latent = old_lat
                tau = old_tau
            ip += 1

        if adapting:
            if (it + 1) % batch_size == 0:
                batch_num += 1
                gain = min(0.05, 1.0 / math.sqrt(batch_num))
                for p in range(npar):
                    if acc_batch[p] / batch_size > adapt_target:
                        step[p] *= math.exp(gain)
                    else:
                        step[p] *= math.exp(-gain)
                    acc_batch[p] = 0.0
            if it + 1 == burn_in:
                acc_batch[:] = 0.0
        else:
            for p in range(npar):
                acc_kept[p] += acc_batch[p]
                acc_batch[p] = 0.0

            if (it - burn_in) % thin == 0:
                kept = (it - burn_in) // thin
                for m in range(nt):
                    d_out[kept, m] = d[m]
                tau_out[kept] = tau
                if effect_mode == RANDOM_EFFECTS:
                    for m in range(1, nt):
                        dnew_out[kept, m] = d[m] + tau * rng.standard_normal()
                dev_out[kept] = _full_deviance(like_kind, effect_mode, ns, study_start,
                                               arm_t, arm_x1, arm_x2, arm_const, mu, delta, d)
                resdev_out[kept] = _residual_deviance(like_kind, effect_mode, ns, study_start,
                                                      arm_t, arm_x1, arm_x2, mu, delta, d)
                for a in range(total_arms):
                    i = arm_study[a]
                    t1 = arm_t[study_start[i]]
                    if effect_mode == FIXED_EFFECT:
                        dl = d[arm_t[a]] - d[t1]
                    else:
                        dl = delta[a]
                    lin = mu[i] + dl
                    if like_kind == BINOMIAL_LOGIT:
                        param_sum_out[a] += 1.0 / (1.0 + math.exp(-lin))
                    else:
                        param_sum_out[a] += lin

    post_iters = keep * thin
    for p in range(npar):
        acc_out[p] = acc_kept[p] / post_iters
        step_out[p] = step[p]
