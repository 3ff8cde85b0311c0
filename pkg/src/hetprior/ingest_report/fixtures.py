"""Bundled example datasets and roulette judgments.

Two published technology appraisals: an ulcerative colitis network
(colectomy within 3 months, binomial outcome, 4 studies over placebo,
ciclosporin and infliximab) and a type 2 diabetes network (change from
baseline in body weight, normal outcome, 6 studies over 8 regimens, two of
them 3-arm).  The chip files hold the accompanying expert roulette
judgments on the ratio scale, 9 bins spanning [1, 10].
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..elicitation import ChipAllocation
from ..synthesis_engine import TrialDataset
from .io import load_chips, load_dataset

FIXTURE_NAMES = ("ta163", "ta336")


def fixture_path(name: str) -> Path:
    path = resources.files(__package__) / "fixtures" / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture {name!r}")
    return Path(str(path))


def dataset(name: str) -> TrialDataset:
    """Load a bundled dataset by short name ('ta163' or 'ta336')."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown dataset {name!r}, bundled: {FIXTURE_NAMES}")
    return load_dataset(fixture_path(f"{name}.json"))


def chips(name: str) -> ChipAllocation:
    """Load the bundled roulette judgments paired with a dataset."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown chip allocation {name!r}, bundled: {FIXTURE_NAMES}")
    return load_chips(fixture_path(f"chips_{name}.csv"))
