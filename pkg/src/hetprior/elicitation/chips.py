"""Roulette-grid chip allocations over the effect range R."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class ChipAllocation:
    """Chips spread over equal-width bins spanning [lower, upper].

    ``lower`` is the smallest contemplated effect range (1 unless the
    expert raised it) and ``upper`` the stated maximum.  ``chips[j]`` is
    the count placed in bin j; partial allocations are representable so
    a UI can hold work in progress, but fitting requires every chip
    placed.
    """

    lower: float
    upper: float
    nbins: int
    chips: tuple[int, ...]
    total_chips: int

    def __post_init__(self):
        if self.lower < 1.0:
            raise ValueError(f"bin range must start at >= 1, got {self.lower}")
        if self.upper <= self.lower:
            raise ValueError("upper must exceed lower")
        if self.nbins < 2:
            raise ValueError(f"need at least 2 bins, got {self.nbins}")
        object.__setattr__(self, "chips", tuple(int(c) for c in self.chips))
        if len(self.chips) != self.nbins:
            raise ValueError(f"expected {self.nbins} chip counts, got {len(self.chips)}")
        if any(c < 0 for c in self.chips):
            raise ValueError("chip counts must be non-negative")
        if self.total_chips < 1:
            raise ValueError("total_chips must be >= 1")
        if sum(self.chips) > self.total_chips:
            raise ValueError(f"placed {sum(self.chips)} chips but only {self.total_chips} available")

    @property
    def bin_width(self) -> float:
        return (self.upper - self.lower) / self.nbins

    @property
    def placed(self) -> int:
        return sum(self.chips)

    @property
    def fully_allocated(self) -> bool:
        return self.placed == self.total_chips

    @property
    def is_degenerate(self) -> bool:
        """True when fewer than two bins carry chips."""
        return sum(1 for c in self.chips if c > 0) < 2

    def upper_edges(self) -> list[float]:
        w = self.bin_width
        return [self.lower + (j + 1) * w for j in range(self.nbins)]

    def midpoints(self) -> list[float]:
        w = self.bin_width
        return [self.lower + (j + 0.5) * w for j in range(self.nbins)]

    def cumulative_probabilities(self) -> list[float]:
        """Elicited P(R <= edge) at each bin upper edge."""
        if self.placed == 0:
            raise ValueError("no chips placed")
        acc = 0
        out = []
        for c in self.chips:
            acc += c
            out.append(acc / self.placed)
        return out

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "nbins": self.nbins,
            "chips": list(self.chips),
            "total_chips": self.total_chips,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ChipAllocation":
        return cls(
            lower=payload["lower"],
            upper=payload["upper"],
            nbins=payload["nbins"],
            chips=tuple(payload["chips"]),
            total_chips=payload["total_chips"],
        )
