"""Arm-level trial data for the synthesis engine."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
from scipy.special import gammaln


class Likelihood(Enum):
    BinomialLogit = "BinomialLogit"
    NormalIdentity = "NormalIdentity"


@dataclass(frozen=True, slots=True)
class BinomialArm:
    treatment: int
    events: int
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"arm size must be >= 1, got {self.size}")
        if not 0 <= self.events <= self.size:
            raise ValueError(f"events must lie in [0, size], got {self.events}/{self.size}")


@dataclass(frozen=True, slots=True)
class NormalArm:
    treatment: int
    mean: float
    se: float

    def __post_init__(self):
        if self.se <= 0:
            raise ValueError(f"arm se must be positive, got {self.se}")


Arm = Union[BinomialArm, NormalArm]


@dataclass(frozen=True, slots=True)
class Study:
    """Arms of one trial; the first arm is the study's control arm."""

    arms: tuple[Arm, ...]

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(self.arms))
        if len(self.arms) < 2:
            raise ValueError("every study needs at least 2 arms")
        treatments = [a.treatment for a in self.arms]
        if len(set(treatments)) != len(treatments):
            raise ValueError(f"duplicate treatment within a study: {treatments}")


@dataclass(frozen=True, slots=True)
class TrialDataset:
    """Network of studies over treatments 1..n_treatments (1 = reference)."""

    n_treatments: int
    studies: tuple[Study, ...]
    likelihood: Likelihood
    sigma_individual: float | None = None
    treatment_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "studies", tuple(self.studies))
        if self.n_treatments < 2:
            raise ValueError("need at least 2 treatments")
        if not self.studies:
            raise ValueError("need at least one study")
        if self.sigma_individual is not None and self.sigma_individual <= 0:
            raise ValueError("sigma_individual must be positive")
        if self.treatment_names is not None:
            object.__setattr__(self, "treatment_names", tuple(self.treatment_names))
            if len(self.treatment_names) != self.n_treatments:
                raise ValueError(
                    f"{len(self.treatment_names)} treatment names for "
                    f"{self.n_treatments} treatments"
                )
        want = BinomialArm if self.likelihood is Likelihood.BinomialLogit else NormalArm
        for i, study in enumerate(self.studies):
            for arm in study.arms:
                if not isinstance(arm, want):
                    raise ValueError(
                        f"study {i + 1} has a {type(arm).__name__} under {self.likelihood.value}"
                    )
                if not 1 <= arm.treatment <= self.n_treatments:
                    raise ValueError(
                        f"study {i + 1} references treatment {arm.treatment}, "
                        f"valid ids are 1..{self.n_treatments}"
                    )

    @property
    def n_studies(self) -> int:
        return len(self.studies)

    def to_dict(self) -> dict:
        studies = []
        for study in self.studies:
            arms = []
            for arm in study.arms:
                if isinstance(arm, BinomialArm):
                    arms.append({"treatment": arm.treatment, "events": arm.events, "size": arm.size})
                else:
                    arms.append({"treatment": arm.treatment, "mean": arm.mean, "se": arm.se})
            studies.append({"arms": arms})
        payload = {
            "likelihood": self.likelihood.value,
            "n_treatments": self.n_treatments,
            "sigma_individual": self.sigma_individual,
            "studies": studies,
        }
        if self.treatment_names is not None:
            payload["treatment_names"] = list(self.treatment_names)
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> "TrialDataset":
        likelihood = Likelihood(payload["likelihood"])
        studies = []
        for study in payload["studies"]:
            arms: list[Arm] = []
            for arm in study["arms"]:
                if likelihood is Likelihood.BinomialLogit:
                    arms.append(
                        BinomialArm(treatment=arm["treatment"], events=arm["events"], size=arm["size"])
                    )
                else:
                    arms.append(NormalArm(treatment=arm["treatment"], mean=arm["mean"], se=arm["se"]))
            studies.append(Study(arms=tuple(arms)))
        names = payload.get("treatment_names")
        return cls(
            n_treatments=payload["n_treatments"],
            studies=tuple(studies),
            likelihood=likelihood,
            sigma_individual=payload.get("sigma_individual"),
            treatment_names=tuple(names) if names is not None else None,
        )


@dataclass(frozen=True, slots=True)
class FlatData:
    """Kernel-ready arrays: studies concatenated in arm order."""

    study_start: np.ndarray   # (ns+1,) offsets into arm arrays
    arm_study: np.ndarray     # (arms,) owning study index
    arm_t: np.ndarray         # (arms,) 0-based treatment index
    arm_x1: np.ndarray        # events (binomial) or mean (normal)
    arm_x2: np.ndarray        # size (binomial) or se (normal)
    arm_const: np.ndarray     # deviance constants per arm
    treat_start: np.ndarray   # CSR over treatments -> studies touching them
    treat_studies: np.ndarray


def flatten(dataset: TrialDataset) -> FlatData:
    study_start = [0]
    arm_study: list[int] = []
    arm_t: list[int] = []
    x1: list[float] = []
    x2: list[float] = []
    for i, study in enumerate(dataset.studies):
        for arm in study.arms:
            arm_study.append(i)
            arm_t.append(arm.treatment - 1)
            if isinstance(arm, BinomialArm):
                x1.append(float(arm.events))
                x2.append(float(arm.size))
            else:
                x1.append(arm.mean)
                x2.append(arm.se)
        study_start.append(len(arm_t))
    x1a = np.asarray(x1)
    x2a = np.asarray(x2)
    if dataset.likelihood is Likelihood.BinomialLogit:
        # log binomial coefficient, the constant part of -2 log L
        const = gammaln(x2a + 1) - gammaln(x1a + 1) - gammaln(x2a - x1a + 1)
    else:
        const = np.log(2.0 * np.pi * x2a**2)

    touching: list[list[int]] = [[] for _ in range(dataset.n_treatments)]
    for i, study in enumerate(dataset.studies):
        for arm in study.arms:
            t = arm.treatment - 1
            if not touching[t] or touching[t][-1] != i:
                touching[t].append(i)
    treat_start = [0]
    treat_studies: list[int] = []
    for rows in touching:
        treat_studies.extend(rows)
        treat_start.append(len(treat_studies))

    return FlatData(
        study_start=np.asarray(study_start, dtype=np.int64),
        arm_study=np.asarray(arm_study, dtype=np.int64),
        arm_t=np.asarray(arm_t, dtype=np.int64),
        arm_x1=x1a,
        arm_x2=x2a,
        arm_const=np.asarray(const),
        treat_start=np.asarray(treat_start, dtype=np.int64),
        treat_studies=np.asarray(treat_studies, dtype=np.int64),
    )
