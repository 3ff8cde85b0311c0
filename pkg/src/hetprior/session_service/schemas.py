"""Request and response bodies for the HTTP API."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..elicitation import ScaleKind

_SCALE_VALUES = {k.value for k in ScaleKind}
_SCALE_LOWER = {k.value.lower(): k.value for k in ScaleKind}


class CreateSessionRequest(BaseModel):
    scale: str
    sigma: Optional[float] = None
    r_min: float = 1.0

    @field_validator("scale")
    @classmethod
    def _known_scale(cls, v: str) -> str:
        if v in _SCALE_VALUES:
            return v
        if v.lower() in _SCALE_LOWER:
            return _SCALE_LOWER[v.lower()]
        raise ValueError(f"unknown scale {v!r}, expected one of {sorted(_SCALE_VALUES)}")


class Stage1Request(BaseModel):
    certain_identical: bool


class Stage2Request(BaseModel):
    # null means the expert cannot judge a maximum plausible range
    r_max: Optional[float] = None


class ChipsRequest(BaseModel):
    lower: float
    upper: float
    nbins: int
    chips: list[int]
    total_chips: int


class FinalizeRequest(BaseModel):
    decline: bool = False


class SessionEnvelope(BaseModel):
    session: dict
    question: Optional[str] = None


class FeedbackResponse(BaseModel):
    fit: Optional[dict] = None
    bands: dict
    density: dict
    tau_sample: list[float]
    seed: int
    n_draws: int


class AnalysisRequest(BaseModel):
    dataset: Any = Field(description="bundled fixture name or inline dataset JSON")
    effect: Literal["FixedEffect", "RandomEffects"]
    prior: Optional[dict] = Field(
        default=None, description="prior JSON, or {'from_session': id} to reuse a finalized session"
    )
    mcmc: dict = Field(default_factory=dict)


class AnalysisCreated(BaseModel):
    run_id: str
    status: str


class AnalysisStatus(BaseModel):
    run_id: str
    status: Literal["queued", "running", "done", "failed"]
    progress: float
    result: Optional[dict] = None
    error: Optional[str] = None


class ErrorBody(BaseModel):
    error: dict
