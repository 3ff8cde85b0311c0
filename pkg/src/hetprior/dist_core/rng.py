"""Counter-based random number streams.

Every stochastic routine in the package draws from an :class:`RngStream`,
a value token (seed, stream_id) mapped onto a Philox counter-based
generator.  Identical tokens reproduce identical draw sequences;
distinct stream ids give independent streams.  Tokens are cheap to copy
and never hold mutable state, so passing one to two consumers is safe:
each consumer materializes its own generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def _mix(x: int) -> int:
    # splitmix64 finalizer, enough to decorrelate derived stream ids
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass(frozen=True, slots=True)
class RngStream:
    """Reproducible random stream token keyed by (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        """Materialize a fresh generator positioned at the stream start."""
        key = (self.seed & _MASK64, self.stream_id & _MASK64)
        return np.random.Generator(np.random.Philox(key=key))

    def derive(self, tag: int) -> "RngStream":
        """Child stream for subcomponent ``tag``; deterministic in (self, tag)."""
        return RngStream(self.seed, _mix((self.stream_id << 8) ^ _mix(tag)))
