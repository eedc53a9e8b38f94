"""Grating-lobe existence, index sets and directions for a uniform spacing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

from .geometry import check_angle

_FLOOR_NUDGE = 1e-12


def nudged_floor(x: float) -> int:
    """``floor(x)``, snapping values within 1e-12 of an integer onto it.

    ``0.6 * (1 + sin(pi/2))`` evaluates to 1.2 but ``2.5 * 2`` style products
    can land a hair below an integer; both must floor consistently.
    """
    nearest = round(x)
    if abs(x - nearest) < _FLOOR_NUDGE:
        return int(nearest)
    return math.floor(x)


@dataclass(frozen=True)
class GratingLobeSet:
    """Grating-lobe indices ``k`` and the matching directions ``phi_k`` (radians)."""

    indices: List[int] = field(default_factory=list)
    directions: List[float] = field(default_factory=list)

    def __len__(self):
        return len(self.indices)

    def __bool__(self):
        return bool(self.indices)

    def __iter__(self):
        return iter(zip(self.indices, self.directions))


def gl_index_range(d: float, theta1: float) -> tuple[int, int]:
    """Return ``(k_min, k_max)``; the GL indices are that range without 0."""
    s = math.sin(check_angle(theta1, "theta1"))
    return -nudged_floor(d * (1 + s)), nudged_floor(d * (1 - s))


def gl_exists(d: float, theta1: float) -> bool:
    """True iff ULA spacing ``d`` has a grating lobe when steered to ``theta1``."""
    if d <= 0:
        raise ValueError(f"spacing must be positive, got {d!r}")
    s = abs(math.sin(check_angle(theta1, "theta1")))
    return nudged_floor(d * (1 + s)) >= 1


def gl_direction(d: float, theta1: float, k: int) -> float:
    """Direction ``asin(sin(theta1) + k/d)`` of grating lobe ``k``."""
    s = math.sin(check_angle(theta1, "theta1")) + k / d
    if abs(s) > 1:
        # the index range is nudged by 1e-12 in units of d, i.e. 1e-12/d in sine
        if abs(s) - 1 > 2 * _FLOOR_NUDGE * max(1.0, 1.0 / d):
            raise ValueError(f"no grating lobe with index {k} for d={d}, theta1={theta1}")
        s = math.copysign(1.0, s)
    return math.asin(s)


def gl_enumerate(d: float, theta1: float) -> GratingLobeSet:
    """All grating lobes of a ULA with spacing ``d`` steered to ``theta1``.

    Examples
    --------
    >>> import math
    >>> gls = gl_enumerate(0.6, math.radians(45))
    >>> gls.indices
    [-1]
    >>> round(math.degrees(gls.directions[0]), 2)
    -73.65
    """
    if d <= 0:
        raise ValueError(f"spacing must be positive, got {d!r}")
    k_min, k_max = gl_index_range(d, theta1)
    indices = [k for k in range(k_min, k_max + 1) if k != 0]
    return GratingLobeSet(indices, [gl_direction(d, theta1, k) for k in indices])
