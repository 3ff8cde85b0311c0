"""Outcome scales, the R <-> tau mapping, and heterogeneity bands.

R is the ratio of the 97.5th to the 2.5th percentile of true study
effects on the natural scale, so log R spans 2 x 1.96 between-study
standard deviations: tau = log(R) / 3.92.

Heterogeneity is interpreted on the log odds ratio scale.  Priors and
posteriors on other additive scales relate to it through a multiplier
omega derived from the logistic approximation to the normal:
sqrt(3)/pi for probit and standardized mean differences, sigma *
sqrt(3)/pi for raw mean differences (sigma = individual-level SD), and
1 for log ratio scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

RANGE_Z = 3.92  # 2 x 1.96, the 95% normal range in sd units

# Empirical lognormal prior for the squared between-study SD of log odds
# ratios (Turner et al. 2012): log tau^2 ~ N(TURNER_M, TURNER_SD^2).
TURNER_M = -2.56
TURNER_SD = 1.74

# tau bands on the log OR scale: low, moderate, high, extreme
BAND_EDGES = (0.1, 0.5, 1.0)
BAND_LABELS = ("low", "moderate", "high", "extreme")


class ScaleKind(Enum):
    LogOR = "LogOR"
    LogHR = "LogHR"
    LogRR = "LogRR"
    LogRoM = "LogRoM"
    MeanDifference = "MeanDifference"
    StdMeanDifference = "StdMeanDifference"
    Probit = "Probit"


_RATIO_KINDS = frozenset(
    {ScaleKind.LogOR, ScaleKind.LogHR, ScaleKind.LogRR, ScaleKind.LogRoM}
)
# scales whose heterogeneity maps to/from the log OR scale via omega,
# so the empirical log-OR default prior stays meaningful
_OR_CONVERTIBLE = frozenset(
    {ScaleKind.LogOR, ScaleKind.MeanDifference, ScaleKind.StdMeanDifference, ScaleKind.Probit}
)


@dataclass(frozen=True, slots=True)
class OutcomeScale:
    """Additive scale of the treatment effect; sigma required iff MeanDifference."""

    kind: ScaleKind
    sigma: float | None = None

    def __post_init__(self):
        if self.kind is ScaleKind.MeanDifference:
            if self.sigma is None or self.sigma <= 0:
                raise ValueError("MeanDifference scale requires a positive individual-level sigma")
        elif self.sigma is not None:
            raise ValueError(f"sigma is only meaningful for MeanDifference, not {self.kind.value}")

    @property
    def omega(self) -> float:
        if self.kind in _RATIO_KINDS:
            return 1.0
        if self.kind is ScaleKind.MeanDifference:
            return self.sigma * math.sqrt(3.0) / math.pi
        return math.sqrt(3.0) / math.pi

    @property
    def is_ratio(self) -> bool:
        return self.kind in _RATIO_KINDS

    @property
    def supports_empirical_default(self) -> bool:
        return self.kind in _OR_CONVERTIBLE


def ratio_to_tau(r: float) -> float:
    """tau implied by an effect range R >= 1."""
    if r < 1.0:
        raise ValueError(f"effect range must be >= 1, got {r}")
    return math.log(r) / RANGE_Z


def tau_to_ratio(tau: float) -> float:
    """Effect range R implied by tau >= 0."""
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    return math.exp(RANGE_Z * tau)


def convert_scale(tau_or: float, scale: OutcomeScale) -> float:
    """Rescale a log-OR-scale tau to the analysis scale (omega * tau)."""
    if tau_or < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau_or}")
    return scale.omega * tau_or


def turner_truncation_upper(r_max: float) -> float:
    """Upper bound for tau_OR^2 implied by a maximum plausible range."""
    if r_max <= 1.0:
        raise ValueError(f"maximum effect range must exceed 1, got {r_max}")
    return ratio_to_tau(r_max) ** 2


def band_index(tau_or: float) -> int:
    """0=low, 1=moderate, 2=high, 3=extreme, for tau on the log OR scale."""
    for i, edge in enumerate(BAND_EDGES):
        if tau_or < edge:
            return i
    return len(BAND_EDGES)


_TABLE_TAUS = (0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.5, 2.0)


@dataclass(frozen=True, slots=True)
class InterpretationRow:
    r: float
    tau: float
    tau_scaled: float


def interpretation_table(scale: OutcomeScale) -> list[InterpretationRow]:
    """Reference rows (R, tau, omega*tau) for a grid of tau values."""
    return [
        InterpretationRow(r=tau_to_ratio(t), tau=t, tau_scaled=convert_scale(t, scale))
        for t in _TABLE_TAUS
    ]


def interpretation_table_json(scale: OutcomeScale) -> list[dict]:
    return [
        {"r": row.r, "tau": row.tau, "tau_scaled": row.tau_scaled}
        for row in interpretation_table(scale)
    ]


def interpretation_table_csv(scale: OutcomeScale) -> str:
    lines = ["r,tau,tau_scaled"]
    for row in interpretation_table(scale):
        lines.append(f"{row.r:.2f},{row.tau:g},{row.tau_scaled:.6g}")
    return "\n".join(lines) + "\n"
