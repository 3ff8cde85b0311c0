"""HTTP facade: elicitation sessions, live feedback, and analysis runs.

Stage errors map to 409, validation problems to 422, unknown ids to 404.
Mutating endpoints accept an Idempotency-Key header; a retry with the same
key replays the stored response instead of reapplying the mutation.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..dist_core import RngStream
from ..elicitation import (
    STAGE1_QUESTION,
    STAGE2_QUESTION,
    STAGE3_QUESTION,
    ChipAllocation,
    ElicitationSession,
    FitDegenerateError,
    HeterogeneityPrior,
    OutcomeScale,
    ScaleKind,
    Stage,
    StageError,
    UnsupportedDefaultError,
    bands_from_sample,
    finalize,
    fit_ratio,
    interpretation_table_json,
    new_session,
    session_to_dict,
    set_chips,
    stage1,
    stage2,
)
from ..ingest_report.report import (
    AnalysisConfig,
    ReportFormat,
    provenance_for,
    resolve_dataset,
)
from ..synthesis_engine import (
    EffectModel,
    McmcConfig,
    ModelConfig,
    TrialDataset,
    run_mcmc,
)
from .schemas import (
    AnalysisCreated,
    AnalysisRequest,
    AnalysisStatus,
    ChipsRequest,
    CreateSessionRequest,
    FeedbackResponse,
    FinalizeRequest,
    SessionEnvelope,
    Stage1Request,
    Stage2Request,
)
from .store import AnalysisRunner, SessionStore, UnknownSessionError

FEEDBACK_DRAWS = 100_000
DENSITY_CAP = 4096

_QUESTIONS = {
    Stage.Stage1: STAGE1_QUESTION,
    Stage.Stage2: STAGE2_QUESTION,
    Stage.Stage3: STAGE3_QUESTION,
    Stage.Finalized: None,
}


def _envelope(session: ElicitationSession) -> dict:
    return SessionEnvelope(
        session=session_to_dict(session), question=_QUESTIONS[session.stage]
    ).model_dump()


def _error(status: int, err_type: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"type": err_type, "message": message}}
    )


def _live_fit_chips(chips: ChipAllocation) -> ChipAllocation:
    """Renormalize a work-in-progress grid so the fit sees a full allocation."""
    if chips.fully_allocated:
        return chips
    return ChipAllocation(
        lower=chips.lower,
        upper=chips.upper,
        nbins=chips.nbins,
        chips=chips.chips,
        total_chips=chips.placed,
    )


def _feedback_payload(session: ElicitationSession, seed: int) -> FeedbackResponse:
    """Implied heterogeneity for the current judgments; pure given state + seed."""
    if session.stage is Stage.Stage3:
        if session.chips is None or session.chips.placed == 0:
            raise StageError("no chips placed yet; place chips before requesting feedback")
        fit = fit_ratio(_live_fit_chips(session.chips))
        prior = HeterogeneityPrior.from_dict(
            {
                "variant": "ElicitedRatio",
                "params": {"fit": fit.to_dict()},
                "scale": {"kind": session.scale.kind.value, "sigma": session.scale.sigma},
            }
        )
        fit_dict: Optional[dict] = fit.to_dict()
    elif session.stage is Stage.Finalized:
        if session.result is None or session.result.prior is None:
            raise StageError("session finalized without a heterogeneity prior; no feedback to give")
        prior = session.result.prior
        v = prior.variant
        fit_dict = v.fit.to_dict() if hasattr(v, "fit") else None
    else:
        raise StageError(
            f"feedback needs Stage3 judgments or a finalized prior, session is in "
            f"{session.stage.value}"
        )

    tau_or = prior.sample_tau_or(RngStream(seed), FEEDBACK_DRAWS)
    bands = bands_from_sample(tau_or)
    finite = tau_or[np.isfinite(tau_or)]
    hi = float(np.quantile(finite, 0.995)) if len(finite) else 1.0
    edges = np.linspace(0.0, max(hi, 1e-6), 129)
    density, _ = np.histogram(finite[finite <= edges[-1]], bins=edges, density=True)
    stride = max(1, math.ceil(len(finite) / DENSITY_CAP))
    sample = finite[::stride][:DENSITY_CAP]
    return FeedbackResponse(
        fit=fit_dict,
        bands=bands.to_dict(),
        density={"bin_edges": edges.tolist(), "density": density.tolist()},
        tau_sample=[float(x) for x in sample],
        seed=seed,
        n_draws=FEEDBACK_DRAWS,
    )


def _parse_mcmc(payload: dict) -> McmcConfig:
    allowed = {"burn_in", "keep", "thin", "chains", "seed", "adapt_target"}
    unknown = set(payload) - allowed
    if unknown:
        raise ValueError(f"unknown mcmc fields {sorted(unknown)}")
    return McmcConfig(**payload)


def create_app(journal_path: str | Path | None = None, max_workers: int = 2) -> FastAPI:
    app = FastAPI(title="heterogeneity prior elicitation service", version="0.1.0")
    store = SessionStore(journal_path)
    runner = AnalysisRunner(max_workers=max_workers)
    app.state.store = store
    app.state.runner = runner

    @app.exception_handler(StageError)
    async def _stage_error(request: Request, exc: StageError):
        return _error(409, "StageError", str(exc))

    @app.exception_handler(UnknownSessionError)
    async def _unknown_session(request: Request, exc: UnknownSessionError):
        return _error(404, "UnknownSession", f"no session {exc.args[0]!r}")

    @app.exception_handler(FitDegenerateError)
    async def _degenerate(request: Request, exc: FitDegenerateError):
        return _error(422, "FitDegenerateError", str(exc))

    @app.exception_handler(UnsupportedDefaultError)
    async def _unsupported(request: Request, exc: UnsupportedDefaultError):
        return _error(422, "UnsupportedDefaultError", str(exc))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return _error(422, type(exc).__name__, str(exc))

    def _idempotent(key: Optional[str], scope: str, produce):
        if key:
            cached = store.recall_response(f"{scope}:{key}")
            if cached is not None:
                return JSONResponse(content=cached)
        body = produce()
        if key:
            store.remember_response(f"{scope}:{key}", body)
        return JSONResponse(content=body)

    @app.post("/sessions", status_code=201)
    def create_session(
        body: CreateSessionRequest,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        def produce() -> dict:
            scale = OutcomeScale(
                kind=ScaleKind(body.scale),
                sigma=body.sigma if ScaleKind(body.scale) is ScaleKind.MeanDifference else None,
            )
            record = store.create(new_session(scale, r_min=body.r_min))
            return _envelope(record.session)

        response = _idempotent(idempotency_key, "POST:/sessions", produce)
        response.status_code = 201
        return response

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _envelope(store.get(session_id).session)

    @app.post("/sessions/{session_id}/stage1")
    def post_stage1(
        session_id: str,
        body: Stage1Request,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        return _idempotent(
            idempotency_key,
            f"POST:/sessions/{session_id}/stage1",
            lambda: _envelope(store.mutate(session_id, lambda s: stage1(s, body.certain_identical))),
        )

    @app.post("/sessions/{session_id}/stage2")
    def post_stage2(
        session_id: str,
        body: Stage2Request,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        return _idempotent(
            idempotency_key,
            f"POST:/sessions/{session_id}/stage2",
            lambda: _envelope(store.mutate(session_id, lambda s: stage2(s, body.r_max))),
        )

    @app.put("/sessions/{session_id}/chips")
    def put_chips(
        session_id: str,
        body: ChipsRequest,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        allocation = ChipAllocation(
            lower=body.lower,
            upper=body.upper,
            nbins=body.nbins,
            chips=tuple(body.chips),
            total_chips=body.total_chips,
        )
        return _idempotent(
            idempotency_key,
            f"PUT:/sessions/{session_id}/chips",
            lambda: _envelope(store.mutate(session_id, lambda s: set_chips(s, allocation))),
        )

    @app.get("/sessions/{session_id}/feedback", response_model=FeedbackResponse)
    def get_feedback(session_id: str):
        record = store.get(session_id)
        return _feedback_payload(record.session, record.feedback_seed)

    @app.post("/sessions/{session_id}/finalize")
    def post_finalize(
        session_id: str,
        body: FinalizeRequest,
        idempotency_key: Optional[str] = Header(default=None, alias="Idempotency-Key"),
    ):
        return _idempotent(
            idempotency_key,
            f"POST:/sessions/{session_id}/finalize",
            lambda: _envelope(store.mutate(session_id, lambda s: finalize(s, decline=body.decline))),
        )

    @app.post("/analyses", status_code=202, response_model=AnalysisCreated)
    def post_analysis(body: AnalysisRequest):
        if isinstance(body.dataset, str):
            data = resolve_dataset(body.dataset)
            dataset_ref = body.dataset
        else:
            data = TrialDataset.from_dict(body.dataset)
            dataset_ref = "inline"

        prior = None
        if body.prior is not None:
            if "from_session" in body.prior:
                record = store.get(body.prior["from_session"])
                result = record.session.result
                if result is None or result.prior is None:
                    raise StageError(
                        "referenced session has no finalized heterogeneity prior"
                    )
                prior = result.prior
            else:
                prior = HeterogeneityPrior.from_dict(body.prior)

        model = ModelConfig(effect=EffectModel(body.effect), prior=prior)
        mcmc = _parse_mcmc(body.mcmc)
        config = AnalysisConfig(
            dataset=dataset_ref, model=model, mcmc=mcmc, report_format=ReportFormat.json
        )

        def work(report_progress) -> dict:
            report_progress(0.1)
            summary = run_mcmc(data, model, mcmc)
            report_progress(0.95)
            return {
                "summary": summary.to_dict(),
                "provenance": provenance_for(config),
                "comparison": None,
            }

        run = runner.submit(work)
        return AnalysisCreated(run_id=run.run_id, status=run.status)

    @app.get("/analyses/{run_id}", response_model=AnalysisStatus)
    def get_analysis(run_id: str, response: Response):
        run = runner.get(run_id)
        if run is None:
            return _error(404, "UnknownRun", f"no analysis run {run_id!r}")
        return AnalysisStatus(
            run_id=run.run_id,
            status=run.status,
            progress=run.progress,
            result=run.result,
            error=run.error,
        )

    @app.get("/interpretation")
    def get_interpretation(
        scale: str = Query(...), sigma: Optional[float] = Query(default=None)
    ):
        try:
            kind = ScaleKind(scale)
        except ValueError:
            lowered = {k.value.lower(): k for k in ScaleKind}
            if scale.lower() not in lowered:
                raise ValueError(f"unknown scale {scale!r}") from None
            kind = lowered[scale.lower()]
        outcome = OutcomeScale(
            kind=kind, sigma=sigma if kind is ScaleKind.MeanDifference else None
        )
        return {"scale": kind.value, "rows": interpretation_table_json(outcome)}

    static_dir = Path(__file__).parent / "static"
    if static_dir.is_dir() and any(static_dir.iterdir()):
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
