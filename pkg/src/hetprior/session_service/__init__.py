"""HTTP facade over the elicitation protocol and analysis runner."""

from .app import create_app
from .store import AnalysisRunner, SessionStore, UnknownSessionError

__all__ = ["AnalysisRunner", "SessionStore", "UnknownSessionError", "create_app"]
