"""Deterministic chaotic sequence generators.

Three one-dimensional chaotic maps (Gauss/mouse, Logistic, Chebyshev) serve
as reproducible pseudo-random drivers for population initialization and for
the threshold draws inside the crossover and mutation operators. Each stream
is single-owner mutable state: construct one per operator instance and never
share it across concurrent contexts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

__all__ = [
    "MapKind",
    "ChaoticStream",
    "gauss_mouse_stream",
    "logistic_stream",
    "chebyshev_stream",
]

# Seeds where the r=4 logistic recurrence collapses onto a fixed point or a
# short absorbing cycle.
_LOGISTIC_DEGENERATE = (0.0, 0.25, 0.5, 0.75, 1.0)


class MapKind(enum.Enum):
    GAUSS_MOUSE = "gauss_mouse"
    LOGISTIC = "logistic"
    CHEBYSHEV = "chebyshev"


@dataclass
class ChaoticStream:
    """State of a single chaotic map iteration.

    ``state`` holds the raw map value (for Chebyshev this lives in [-1, 1];
    the emitted value is its [0, 1] normalization). ``param`` is the logistic
    growth rate or the Chebyshev order, unused by Gauss/mouse. ``emitted``
    counts values produced so far.
    """

    kind: MapKind
    state: float
    param: float = 0.0
    emitted: int = field(default=0)

    def next(self) -> float:
        """Advance the map once and return the emitted value in [0, 1]."""
        if self.kind is MapKind.GAUSS_MOUSE:
            return gauss_mouse_next(self)
        if self.kind is MapKind.LOGISTIC:
            return logistic_next(self)
        return chebyshev_next(self)


def gauss_mouse_stream(initial: float) -> ChaoticStream:
    """Create a Gauss/mouse stream; any initial state in [0, 1] is admissible."""
    if not 0.0 <= initial <= 1.0:
        raise ValueError(f"gauss/mouse initial state must lie in [0, 1], got {initial}")
    return ChaoticStream(MapKind.GAUSS_MOUSE, float(initial))


def logistic_stream(initial: float, growth_rate: float = 4.0) -> ChaoticStream:
    """Create a logistic stream.

    Initial states in {0, 0.25, 0.5, 0.75, 1} are rejected because the
    sequence would collapse; anything else in (0, 1) is admissible.
    """
    if initial in _LOGISTIC_DEGENERATE:
        raise ValueError(f"logistic seed {initial} collapses the sequence")
    if not 0.0 < initial < 1.0:
        raise ValueError(f"logistic initial state must lie in (0, 1), got {initial}")
    return ChaoticStream(MapKind.LOGISTIC, float(initial), param=float(growth_rate))


def chebyshev_stream(initial: float, order: float = 4.0) -> ChaoticStream:
    """Create a Chebyshev stream with raw state in [-1, 1]."""
    if not -1.0 <= initial <= 1.0:
        raise ValueError(f"chebyshev initial state must lie in [-1, 1], got {initial}")
    return ChaoticStream(MapKind.CHEBYSHEV, float(initial), param=float(order))


def gauss_mouse_next(stream: ChaoticStream) -> float:
    """Emit the next Gauss/mouse value: 1 at state 0, else frac(1/state)."""
    if stream.kind is not MapKind.GAUSS_MOUSE:
        raise ValueError(f"expected a gauss/mouse stream, got {stream.kind}")
    x = stream.state
    value = 1.0 if x == 0.0 else math.modf(1.0 / x)[0]
    stream.state = value
    stream.emitted += 1
    return value


def logistic_next(stream: ChaoticStream) -> float:
    """Emit the next logistic value r*x*(1-x)."""
    if stream.kind is not MapKind.LOGISTIC:
        raise ValueError(f"expected a logistic stream, got {stream.kind}")
    x = stream.state
    value = stream.param * x * (1.0 - x)
    stream.state = value
    stream.emitted += 1
    return value


def chebyshev_next(stream: ChaoticStream) -> float:
    """Advance the Chebyshev map cos(a*arccos(x)) and emit (x + 1) / 2."""
    if stream.kind is not MapKind.CHEBYSHEV:
        raise ValueError(f"expected a chebyshev stream, got {stream.kind}")
    raw = math.cos(stream.param * math.acos(stream.state))
    stream.state = raw
    stream.emitted += 1
    return (raw + 1.0) / 2.0
