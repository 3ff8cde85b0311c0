"""Distribution primitives shared by the elicitation and synthesis layers.

Six families, each a frozen dataclass validated at construction.  All
operations are pure: ``sample`` takes an :class:`RngStream` token and
always replays the same draws for the same token.  Scalar math is
delegated to scipy.stats; the public surface is the package's own so
callers never touch scipy objects.

Serialized form is ``{"family": <name>, "params": {...}}`` with the
field names listed in docs/formats.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Union

import numpy as np
from scipy import optimize, stats

from .rng import RngStream


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True, slots=True)
class Normal:
    mean: float
    sd: float

    def __post_init__(self):
        _require(self.sd > 0, "Normal requires sd > 0")

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def _frozen(self):
        return stats.norm(loc=self.mean, scale=self.sd)

    def pdf(self, x: float) -> float:
        return float(self._frozen().pdf(x))

    def cdf(self, x: float) -> float:
        return float(self._frozen().cdf(x))

    def quantile(self, p: float) -> float:
        _check_p(p)
        return float(self._frozen().ppf(p))

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        _check_n(n)
        gen = rng.generator()
        return gen.normal(self.mean, self.sd, size=n)


@dataclass(frozen=True, slots=True)
class LogNormal:
    """log X ~ Normal(log_mean, log_sd**2)."""

    log_mean: float
    log_sd: float

    def __post_init__(self):
        _require(self.log_sd > 0, "LogNormal requires log_sd > 0")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def _frozen(self):
        return stats.lognorm(s=self.log_sd, scale=math.exp(self.log_mean))

    def pdf(self, x: float) -> float:
        return float(self._frozen().pdf(x))

    def cdf(self, x: float) -> float:
        return float(self._frozen().cdf(x))

    def quantile(self, p: float) -> float:
        _check_p(p)
        return float(self._frozen().ppf(p))

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        _check_n(n)
        gen = rng.generator()
        return np.exp(gen.normal(self.log_mean, self.log_sd, size=n))


@dataclass(frozen=True, slots=True)
class Gamma:
    """Shape/rate parameterization; mean = shape/rate."""

    shape: float
    rate: float

    def __post_init__(self):
        _require(self.shape > 0 and self.rate > 0, "Gamma requires shape > 0 and rate > 0")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def _frozen(self):
        return stats.gamma(a=self.shape, scale=1.0 / self.rate)

    def pdf(self, x: float) -> float:
        return float(self._frozen().pdf(x))

    def cdf(self, x: float) -> float:
        return float(self._frozen().cdf(x))

    def quantile(self, p: float) -> float:
        # bracketed root-finding on the cdf, no closed form
        _check_p(p)
        frozen = self._frozen()
        hi = (self.shape + 1.0) / self.rate
        while frozen.cdf(hi) < p:
            hi *= 2.0
        # quantiles for shape << 1 sit at ~1e-10, so the tolerance must be
        # relative; an absolute xtol would cap their accuracy
        return float(
            optimize.brentq(
                lambda x: frozen.cdf(x) - p, 0.0, hi,
                xtol=5e-324, rtol=4.0 * np.finfo(float).eps,
            )
        )

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        _check_n(n)
        gen = rng.generator()
        return gen.gamma(self.shape, 1.0 / self.rate, size=n)


@dataclass(frozen=True, slots=True)
class Uniform:
    lower: float
    upper: float

    def __post_init__(self):
        _require(self.lower < self.upper, "Uniform requires lower < upper")

    @property
    def support(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    def pdf(self, x: float) -> float:
        if self.lower <= x <= self.upper:
            return 1.0 / (self.upper - self.lower)
        return 0.0

    def cdf(self, x: float) -> float:
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        return (x - self.lower) / (self.upper - self.lower)

    def quantile(self, p: float) -> float:
        _check_p(p)
        return self.lower + p * (self.upper - self.lower)

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        _check_n(n)
        gen = rng.generator()
        return gen.uniform(self.lower, self.upper, size=n)


@dataclass(frozen=True, slots=True)
class HalfNormal:
    """|Normal(0, sd**2)|."""

    sd: float

    def __post_init__(self):
        _require(self.sd > 0, "HalfNormal requires sd > 0")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def pdf(self, x: float) -> float:
        return float(stats.halfnorm(scale=self.sd).pdf(x))

    def cdf(self, x: float) -> float:
        return float(stats.halfnorm(scale=self.sd).cdf(x))

    def quantile(self, p: float) -> float:
        _check_p(p)
        return float(stats.halfnorm(scale=self.sd).ppf(p))

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        _check_n(n)
        gen = rng.generator()
        return np.abs(gen.normal(0.0, self.sd, size=n))


@dataclass(frozen=True, slots=True)
class TruncatedLogNormal:
    """LogNormal conditioned on X <= upper; cdf renormalized to F(x)/F(upper).

    upper = inf is a valid sentinel and degenerates to the untruncated
    distribution.
    """

    log_mean: float
    log_sd: float
    upper: float

    def __post_init__(self):
        _require(self.log_sd > 0, "TruncatedLogNormal requires log_sd > 0")
        _require(self.upper > 0, "TruncatedLogNormal requires upper > 0")
        # strictly positive mass below the bound
        _require(self._base().cdf(self.upper) > 0, "truncation bound leaves no mass")

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, self.upper)

    def _base(self):
        return stats.lognorm(s=self.log_sd, scale=math.exp(self.log_mean))

    def _mass(self) -> float:
        return float(self._base().cdf(self.upper))

    def pdf(self, x: float) -> float:
        if x > self.upper:
            return 0.0
        return float(self._base().pdf(x)) / self._mass()

    def cdf(self, x: float) -> float:
        if x >= self.upper:
            return 1.0
        return float(self._base().cdf(x)) / self._mass()

    def quantile(self, p: float) -> float:
        _check_p(p)
        return float(self._base().ppf(p * self._mass()))

    def sample(self, rng: RngStream, n: int) -> np.ndarray:
        # inverse-CDF on the renormalized distribution, never rejection
        _check_n(n)
        gen = rng.generator()
        u = gen.random(n)
        return self._base().ppf(u * self._mass())


DistributionSpec = Union[Normal, LogNormal, Gamma, Uniform, HalfNormal, TruncatedLogNormal]

_FAMILIES: dict[str, type] = {
    "Normal": Normal,
    "LogNormal": LogNormal,
    "Gamma": Gamma,
    "Uniform": Uniform,
    "HalfNormal": HalfNormal,
    "TruncatedLogNormal": TruncatedLogNormal,
}


def _check_p(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile probability must lie in (0, 1), got {p}")


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")


def cdf(dist: DistributionSpec, x: float) -> float:
    return dist.cdf(x)


def quantile(dist: DistributionSpec, p: float) -> float:
    return dist.quantile(p)


def sample(dist: DistributionSpec, rng: RngStream, n: int) -> np.ndarray:
    return dist.sample(rng, n)


def to_dict(dist: DistributionSpec) -> dict:
    family = type(dist).__name__
    params = {f.name: getattr(dist, f.name) for f in fields(dist)}
    return {"family": family, "params": params}


def from_dict(payload: dict) -> DistributionSpec:
    try:
        family = _FAMILIES[payload["family"]]
    except KeyError:
        raise ValueError(f"unknown distribution family {payload.get('family')!r}") from None
    return family(**payload["params"])
