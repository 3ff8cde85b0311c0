"""Three-stage elicitation session state machine.

Stage 1 asks whether the expert is certain the true effects are
identical across studies (yes: fixed effect, no prior needed).  Stage 2
asks for a maximum plausible effect range Rmax (declined: empirical
default prior).  Stage 3 collects roulette judgments over [Rmin, Rmax]
(declined: empirical default truncated at (log Rmax / 3.92)^2).

Sessions are immutable values; every operation returns a new session
with the judgment appended to the audit log.  The only terminal states
are: fixed effect, empirical default, truncated empirical default, or
the elicited ratio prior.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Optional

from .chips import ChipAllocation
from .fitting import fit_ratio
from .priors import (
    ElicitedRatio,
    HeterogeneityPrior,
    LogNormalTauSq,
    TruncatedLogNormalTauSq,
)
from .scales import (
    RANGE_Z,
    TURNER_M,
    TURNER_SD,
    OutcomeScale,
    ScaleKind,
    turner_truncation_upper,
)

STAGE1_QUESTION = (
    "Can you be certain that the treatment effects across the studies will be "
    "identical, ignoring within-study sampling variability?"
)
STAGE2_QUESTION = (
    "Let R be the ratio of the largest to the smallest effect on the natural "
    "scale. Are you able to judge a maximum plausible value for R? Denoting "
    "this limit by Rmax, values of R above Rmax would be too implausible to "
    "be contemplated."
)
STAGE3_QUESTION = (
    "Do you judge some values in the range [Rmin, Rmax] to be more likely "
    "than others, and can you express those beliefs by placing chips on the "
    "grid? The proportion of chips in a bin is your probability that R lies "
    "in that bin."
)


class StageError(RuntimeError):
    """Operation not valid in the session's current stage."""


class UnsupportedDefaultError(ValueError):
    """The empirical default prior is not applicable to this outcome scale."""


class Stage(Enum):
    Stage1 = "Stage1"
    Stage2 = "Stage2"
    Stage3 = "Stage3"
    Finalized = "Finalized"


class EffectModel(Enum):
    FixedEffect = "FixedEffect"
    RandomEffects = "RandomEffects"


@dataclass(frozen=True, slots=True)
class AuditRecord:
    timestamp: str
    judgment: dict


@dataclass(frozen=True, slots=True)
class SessionResult:
    model: EffectModel
    prior: Optional[HeterogeneityPrior]


@dataclass(frozen=True, slots=True)
class ElicitationSession:
    id: str
    scale: OutcomeScale
    stage: Stage = Stage.Stage1
    certain_identical: Optional[bool] = None
    r_max: Optional[float] = None
    r_min: float = 1.0
    chips: Optional[ChipAllocation] = None
    result: Optional[SessionResult] = None
    audit_log: tuple[AuditRecord, ...] = ()

    def __post_init__(self):
        if self.r_min < 1.0:
            raise ValueError(f"r_min must be >= 1, got {self.r_min}")
        if self.r_max is not None and self.r_max <= self.r_min:
            raise ValueError(f"r_max must exceed r_min, got {self.r_max} <= {self.r_min}")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _logged(session: ElicitationSession, judgment: dict, **changes: Any) -> ElicitationSession:
    record = AuditRecord(timestamp=_now(), judgment=judgment)
    return replace(session, audit_log=session.audit_log + (record,), **changes)


def _require_stage(session: ElicitationSession, stage: Stage, op: str) -> None:
    if session.stage is not stage:
        raise StageError(f"{op} requires stage {stage.value}, session is in {session.stage.value}")


def new_session(scale: OutcomeScale, session_id: str | None = None, r_min: float = 1.0) -> ElicitationSession:
    return ElicitationSession(id=session_id or secrets.token_urlsafe(16), scale=scale, r_min=r_min)


def stage1(session: ElicitationSession, certain_identical: bool) -> ElicitationSession:
    """Identical-effects judgment: yes finalizes a fixed-effect choice."""
    _require_stage(session, Stage.Stage1, "stage1")
    judgment = {"stage": 1, "certain_identical": certain_identical}
    if certain_identical:
        return _logged(
            session,
            judgment,
            certain_identical=True,
            stage=Stage.Finalized,
            result=SessionResult(model=EffectModel.FixedEffect, prior=None),
        )
    return _logged(session, judgment, certain_identical=False, stage=Stage.Stage2)


def empirical_default_prior(scale: OutcomeScale) -> HeterogeneityPrior:
    """The published log-OR default: log tau^2 ~ N(-2.56, 1.74^2)."""
    if not scale.supports_empirical_default:
        raise UnsupportedDefaultError(
            f"the empirical default prior is calibrated for log odds ratios and "
            f"scales converting to them; {scale.kind.value} does not, so Stage 3 "
            f"judgments are required"
        )
    return HeterogeneityPrior(variant=LogNormalTauSq(m=TURNER_M, v=TURNER_SD**2), scale=scale)


def stage2(session: ElicitationSession, r_max: Optional[float]) -> ElicitationSession:
    """Rmax judgment: a value moves to Stage 3, declining takes the default prior."""
    _require_stage(session, Stage.Stage2, "stage2")
    if r_max is None:
        prior = empirical_default_prior(session.scale)
        return _logged(
            session,
            {"stage": 2, "r_max": None, "outcome": "empirical_default"},
            stage=Stage.Finalized,
            result=SessionResult(model=EffectModel.RandomEffects, prior=prior),
        )
    if r_max <= session.r_min:
        raise ValueError(f"r_max must exceed r_min={session.r_min}, got {r_max}")
    return _logged(session, {"stage": 2, "r_max": r_max}, stage=Stage.Stage3, r_max=r_max)


def stage3_decline(session: ElicitationSession) -> ElicitationSession:
    """No roulette judgments: default prior truncated at (log Rmax / 3.92)^2."""
    _require_stage(session, Stage.Stage3, "stage3_decline")
    if not session.scale.supports_empirical_default:
        raise UnsupportedDefaultError(
            f"the empirical default prior is calibrated for log odds ratios and "
            f"scales converting to them; {session.scale.kind.value} does not, so "
            f"roulette judgments are required"
        )
    if math.isinf(session.r_max):
        upper = None
        variant: LogNormalTauSq | TruncatedLogNormalTauSq = LogNormalTauSq(
            m=TURNER_M, v=TURNER_SD**2
        )
    else:
        upper = turner_truncation_upper(session.r_max)
        variant = TruncatedLogNormalTauSq(m=TURNER_M, v=TURNER_SD**2, upper=upper)
    prior = HeterogeneityPrior(variant=variant, scale=session.scale)
    return _logged(
        session,
        {"stage": 3, "outcome": "truncated_default", "upper": upper},
        stage=Stage.Finalized,
        result=SessionResult(model=EffectModel.RandomEffects, prior=prior),
    )


def set_chips(session: ElicitationSession, chips: ChipAllocation) -> ElicitationSession:
    """Record (work-in-progress) roulette judgments; grid must span [r_min, r_max]."""
    _require_stage(session, Stage.Stage3, "set_chips")
    if chips.lower != session.r_min or chips.upper != session.r_max:
        raise ValueError(
            f"chip grid [{chips.lower}, {chips.upper}] must span "
            f"[{session.r_min}, {session.r_max}]"
        )
    return _logged(session, {"stage": 3, "chips": chips.to_dict()}, chips=chips)


def stage3_fit(session: ElicitationSession) -> ElicitationSession:
    """Fit the ratio distribution to the placed chips and finalize."""
    _require_stage(session, Stage.Stage3, "stage3_fit")
    if session.chips is None:
        raise StageError("no chips placed; place chips or decline to the truncated default")
    fit = fit_ratio(session.chips)
    prior = HeterogeneityPrior(variant=ElicitedRatio(fit=fit), scale=session.scale)
    return _logged(
        session,
        {"stage": 3, "outcome": "elicited", "fit": fit.to_dict()},
        result=SessionResult(model=EffectModel.RandomEffects, prior=prior),
        stage=Stage.Finalized,
    )


def finalize(session: ElicitationSession, decline: bool = False) -> ElicitationSession:
    """Terminal Stage-3 action: fit the chips, or explicitly decline."""
    _require_stage(session, Stage.Stage3, "finalize")
    if decline:
        return stage3_decline(session)
    if session.chips is None or session.chips.placed == 0:
        raise StageError(
            "no judgments to fit; either place chips or decline explicitly "
            "to accept the truncated default prior"
        )
    return stage3_fit(session)


def dichotomize_guidance(
    session: ElicitationSession,
    cutoff: float | None = None,
    category: tuple[int, int] | None = None,
) -> ElicitationSession:
    """Record how a non-ratio outcome was dichotomized for the R questions.

    ``cutoff`` is the threshold c on the outcome's own scale;
    ``category`` = (k, K) splits K ordered categories at category k.
    Bookkeeping only: the numeric link to the log OR scale stays omega.
    """
    if session.scale.is_ratio:
        raise StageError(f"dichotomization applies to non-ratio scales, not {session.scale.kind.value}")
    if (cutoff is None) == (category is None):
        raise ValueError("provide exactly one of cutoff or category")
    if cutoff is not None:
        judgment = {"dichotomize": {"scale": session.scale.kind.value, "cutoff": cutoff}}
    else:
        k, total = category
        if not 1 <= k <= total:
            raise ValueError(f"category split must satisfy 1 <= k <= K, got k={k}, K={total}")
        split = f"c1..c{k - 1}|c{k}..c{total}" if k > 1 else f"|c1..c{total}"
        judgment = {
            "dichotomize": {"scale": session.scale.kind.value, "split": split, "k": k, "K": total}
        }
    return _logged(session, judgment)


def session_to_dict(session: ElicitationSession) -> dict:
    result = None
    if session.result is not None:
        result = {
            "model": session.result.model.value,
            "prior": session.result.prior.to_dict() if session.result.prior else None,
        }
    return {
        "id": session.id,
        "scale": {"kind": session.scale.kind.value, "sigma": session.scale.sigma},
        "stage": session.stage.value,
        "certain_identical": session.certain_identical,
        "r_max": session.r_max,
        "r_min": session.r_min,
        "chips": session.chips.to_dict() if session.chips else None,
        "result": result,
        "audit_log": [
            {"timestamp": rec.timestamp, "judgment": rec.judgment} for rec in session.audit_log
        ],
    }


def session_from_dict(payload: dict) -> ElicitationSession:
    result = None
    if payload.get("result") is not None:
        prior = payload["result"]["prior"]
        result = SessionResult(
            model=EffectModel(payload["result"]["model"]),
            prior=HeterogeneityPrior.from_dict(prior) if prior else None,
        )
    return ElicitationSession(
        id=payload["id"],
        scale=OutcomeScale(kind=ScaleKind(payload["scale"]["kind"]), sigma=payload["scale"]["sigma"]),
        stage=Stage(payload["stage"]),
        certain_identical=payload.get("certain_identical"),
        r_max=payload.get("r_max"),
        r_min=payload.get("r_min", 1.0),
        chips=ChipAllocation.from_dict(payload["chips"]) if payload.get("chips") else None,
        result=result,
        audit_log=tuple(
            AuditRecord(timestamp=rec["timestamp"], judgment=rec["judgment"])
            for rec in payload.get("audit_log", ())
        ),
    )
