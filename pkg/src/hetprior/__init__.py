"""Heterogeneity prior elicitation and Bayesian network meta-analysis.

The package splits into five parts: probability distributions and seeded
random streams (dist_core), the three-stage expert judgment protocol that
turns ratio statements into a prior for the between-study standard
deviation (elicitation), the MCMC sampler for fixed and random effect
network meta-analysis (synthesis_engine), dataset and report plumbing with
a command line front end (ingest_report), and an HTTP facade over the
elicitation protocol (session_service).
"""

from . import dist_core, elicitation, ingest_report, session_service, synthesis_engine

__version__ = "0.1.0"

__all__ = [
    "dist_core",
    "elicitation",
    "ingest_report",
    "session_service",
    "synthesis_engine",
    "__version__",
]
