"""Session persistence and the background analysis runner.

The journal is append-only JSON lines; each mutation writes the full
session snapshot, so replay just keeps the last line per id.  Idempotency
records are journaled the same way, letting retried mutations return the
original response after a restart.
"""

from __future__ import annotations

import json
import secrets
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from ..elicitation import ElicitationSession, session_from_dict, session_to_dict


class UnknownSessionError(KeyError):
    pass


@dataclass
class SessionRecord:
    session: ElicitationSession
    feedback_seed: int
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """In-memory sessions with an optional crash-safe journal."""

    def __init__(self, journal_path: str | Path | None = None):
        self._records: dict[str, SessionRecord] = {}
        self._idempotency: dict[str, dict] = {}
        self._journal_path = Path(journal_path) if journal_path else None
        self._journal_lock = threading.Lock()
        if self._journal_path and self._journal_path.exists():
            self._replay()

    def _replay(self) -> None:
        for line in self._journal_path.read_text().splitlines():
            if not line.strip():
                continue
            entry = json.loads(line)
            if entry["kind"] == "session":
                session = session_from_dict(entry["state"])
                self._records[session.id] = SessionRecord(
                    session=session, feedback_seed=entry["feedback_seed"]
                )
            elif entry["kind"] == "idempotency":
                self._idempotency[entry["key"]] = entry["response"]

    def _append(self, entry: dict) -> None:
        if self._journal_path is None:
            return
        with self._journal_lock:
            with self._journal_path.open("a") as fh:
                fh.write(json.dumps(entry) + "\n")
                fh.flush()

    def create(self, session: ElicitationSession) -> SessionRecord:
        record = SessionRecord(session=session, feedback_seed=secrets.randbits(63))
        self._records[session.id] = record
        self._append(
            {"kind": "session", "state": session_to_dict(session),
             "feedback_seed": record.feedback_seed}
        )
        return record

    def get(self, session_id: str) -> SessionRecord:
        try:
            return self._records[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    def update(self, session: ElicitationSession) -> None:
        record = self.get(session.id)
        record.session = session
        self._append(
            {"kind": "session", "state": session_to_dict(session),
             "feedback_seed": record.feedback_seed}
        )

    def mutate(
        self, session_id: str, fn: Callable[[ElicitationSession], ElicitationSession]
    ) -> ElicitationSession:
        """Apply fn under the session's lock and journal the new snapshot."""
        record = self.get(session_id)
        with record.lock:
            updated = fn(record.session)
            record.session = updated
            self._append(
                {"kind": "session", "state": session_to_dict(updated),
                 "feedback_seed": record.feedback_seed}
            )
            return updated

    def remember_response(self, key: str, response: dict) -> None:
        self._idempotency[key] = response
        self._append({"kind": "idempotency", "key": key, "response": response})

    def recall_response(self, key: str) -> Optional[dict]:
        return self._idempotency.get(key)

    def session_ids(self) -> list[str]:
        return list(self._records)


@dataclass
class AnalysisRun:
    run_id: str
    status: str = "queued"
    progress: float = 0.0
    result: Optional[dict] = None
    error: Optional[str] = None


class AnalysisRunner:
    """Bounded worker pool; runs are transient (not journaled)."""

    def __init__(self, max_workers: int = 2):
        self._pool = ThreadPoolExecutor(max_workers=max_workers)
        self._runs: dict[str, AnalysisRun] = {}
        self._lock = threading.Lock()

    def submit(self, work: Callable[[Callable[[float], None]], dict]) -> AnalysisRun:
        run = AnalysisRun(run_id=secrets.token_urlsafe(12))
        with self._lock:
            self._runs[run.run_id] = run

        def report(progress: float) -> None:
            run.progress = min(1.0, max(run.progress, progress))

        def job() -> None:
            run.status = "running"
            report(0.05)
            try:
                run.result = work(report)
                run.progress = 1.0
                run.status = "done"
            except Exception as exc:
                run.error = f"{type(exc).__name__}: {exc}"
                run.status = "failed"

        self._pool.submit(job)
        return run

    def get(self, run_id: str) -> Optional[AnalysisRun]:
        with self._lock:
            return self._runs.get(run_id)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=False, cancel_futures=True)
