"""
Coprime block-partitioned NULA design.

A NULA of ``N_b`` blocks with gap ``p * d / N_b`` puts a block-array null on
every subarray grating lobe, for every steering angle up to ``theta_max``,
whenever ``N_b > floor(d (1 + sin(theta_max)))`` and ``gcd(p, N_b) == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import InfeasibleDesignError, NulaError
from .geometry import NulaGeometry, angle_grid_deg, check_angle
from .grating import gl_enumerate, nudged_floor
from .leakage import array_factor, block_leakage_at_gl

CANCEL_TOL = 1e-12


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers (Euclid).

    >>> gcd(15, 12)
    3
    """
    if int(a) != a or int(b) != b:
        raise TypeError("gcd is defined for integers only")
    a, b = abs(int(a)), abs(int(b))
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


@dataclass(frozen=True)
class DesignRequest:
    """What a design must achieve.

    Parameters
    ----------
    d : float
        Subarray element spacing in wavelengths.
    theta_max : float
        Largest steering angle (radians) the design must support.
    element_budget : int, optional
        Cap on the total element count ``n_sub * N_b``.
    n_sub : int
        Subarray size used when checking the element budget.
    """

    d: float
    theta_max: float
    element_budget: Optional[int] = None
    n_sub: int = 1

    def __post_init__(self):
        if not (self.d > 0 and math.isfinite(self.d)):
            raise ValueError(f"d must be positive, got {self.d!r}")
        theta_max = check_angle(self.theta_max, "theta_max")
        if theta_max <= 0:
            raise ValueError("theta_max must lie in (0, pi/2]")
        object.__setattr__(self, "theta_max", theta_max)
        if self.element_budget is not None and self.element_budget < 1:
            raise ValueError("element_budget must be positive")
        if self.n_sub < 1:
            raise ValueError("n_sub must be positive")

    @property
    def min_blocks(self) -> int:
        """Smallest block count allowed: ``floor(d (1 + sin theta_max)) + 1``."""
        return nudged_floor(self.d * (1 + math.sin(self.theta_max))) + 1


@dataclass(frozen=True)
class NulaDesign:
    """A ``(N_b, p)`` choice for element spacing ``spacing``; gap is ``p * spacing / N_b``."""

    n_blocks: int
    p: int
    spacing: float
    certified: bool = False

    def __post_init__(self):
        if self.n_blocks < 1 or self.p < 1:
            raise ValueError("n_blocks and p must be positive integers")
        object.__setattr__(self, "n_blocks", int(self.n_blocks))
        object.__setattr__(self, "p", int(self.p))

    @property
    def block_gap(self) -> float:
        return self.p * self.spacing / self.n_blocks

    @property
    def gap_ratio(self) -> Fraction:
        """``block_gap / d`` as an exact rational."""
        return Fraction(self.p, self.n_blocks)

    @property
    def is_coprime(self) -> bool:
        return coprime(self.p, self.n_blocks)

    def geometry(self, n_sub: int) -> NulaGeometry:
        return NulaGeometry.from_design(self.n_blocks, self.p, n_sub, self.spacing)

    def block_pitch(self, n_sub: int) -> float:
        return (n_sub - 1) * self.spacing + self.block_gap


@dataclass(frozen=True)
class CancellationCheck:
    theta1: float
    k: int
    block_leakage: float
    integer_ratio: bool  # p*k/N_b is an integer, i.e. the null is missing

    @property
    def passed(self) -> bool:
        return self.block_leakage < CANCEL_TOL


@dataclass
class CancellationReport:
    design: NulaDesign
    d: float
    theta_max: float
    checks: List[CancellationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CancellationCheck]:
        return [c for c in self.checks if not c.passed]


def steering_grid(d: float, theta_max: float, step_deg: float = 1.0) -> np.ndarray:
    """Steering angles to verify: a regular grid plus every GL-count breakpoint.

    The grating-lobe index set is piecewise constant in ``theta1`` and changes
    only where ``d (1 +- sin theta1)`` crosses an integer.
    """
    n = int(math.floor(math.degrees(theta_max) / step_deg + 1e-9))
    grid = [math.radians(i * step_deg) for i in range(-n, n + 1)]
    grid += [-theta_max, theta_max]
    s_max = math.sin(theta_max)
    for m in range(1, int(math.floor(2 * d)) + 1):
        for s in (m / d - 1, 1 - m / d):
            if abs(s) <= s_max:
                grid.append(math.asin(s))
    return np.unique(np.clip(grid, -theta_max, theta_max))


def verify_cancellation(
    design: NulaDesign, d: float, theta_max: float, step_deg: float = 1.0
) -> CancellationReport:
    """Check that every grating lobe is nulled by the block factor.

    Failures are collected in the report, never raised.
    """
    theta_max = check_angle(theta_max, "theta_max")
    report = CancellationReport(design, d, theta_max)
    cache = {}
    for theta1 in steering_grid(d, theta_max, step_deg):
        for k in gl_enumerate(d, float(theta1)).indices:
            if k not in cache:
                cache[k] = abs(block_leakage_at_gl(design, k))
            report.checks.append(
                CancellationCheck(
                    float(theta1), k, cache[k], (design.p * k) % design.n_blocks == 0
                )
            )
    return report


def certify(design: NulaDesign, d: float, theta_max: float) -> NulaDesign:
    return replace(design, certified=verify_cancellation(design, d, theta_max).passed)


def design_nula(
    req: DesignRequest, n_blocks: Optional[int] = None, p: Optional[int] = None
) -> NulaDesign:
    """Pick ``(N_b, p)`` for a request.

    By default the smallest valid block count and the smallest coprime ``p``.
    ``n_blocks`` and ``p`` pin either choice; a pinned pair is returned even if
    it fails certification, with ``certified=False``.
    """
    if n_blocks is None:
        n_blocks = req.min_blocks
    if req.element_budget is not None and req.min_blocks * req.n_sub > req.element_budget:
        raise InfeasibleDesignError(
            f"element budget {req.element_budget} is below the minimum "
            f"{req.min_blocks} blocks x {req.n_sub} elements"
        )
    if req.element_budget is not None and n_blocks * req.n_sub > req.element_budget:
        raise InfeasibleDesignError(
            f"{n_blocks} blocks x {req.n_sub} elements exceeds the element budget {req.element_budget}"
        )
    if p is None:
        p = next(q for q in range(1, n_blocks + 2) if coprime(q, n_blocks))
    return certify(NulaDesign(n_blocks, p, req.d), req.d, req.theta_max)


def enumerate_designs(
    req: DesignRequest, max_nb: int, max_gap: Optional[float] = None
) -> List[NulaDesign]:
    """All certified designs with ``N_b <= max_nb`` and gap ``<= max_gap``.

    ``max_gap`` is in wavelengths and defaults to ``2 d``, so ``p`` ranges up
    to ``N_b * ceil(max_gap / d)``.
    """
    if max_nb < req.min_blocks:
        raise InfeasibleDesignError(f"max_nb={max_nb} is below the minimum block count {req.min_blocks}")
    if max_gap is None:
        max_gap = 2 * req.d
    mult = max(1, math.ceil(max_gap / req.d - 1e-12))
    out = []
    for nb in range(1, max_nb + 1):
        if req.element_budget is not None and nb * req.n_sub > req.element_budget:
            break
        for p in range(1, nb * mult + 1):
            if not coprime(p, nb):
                continue
            design = certify(NulaDesign(nb, p, req.d), req.d, req.theta_max)
            if design.certified:
                out.append(design)
    return out


def main_beam_halfwidth_deg(n_total: int, aperture: float) -> float:
    """Half-width of the main-lobe exclusion window: two approximate beamwidths."""
    d_avg = aperture / (n_total - 1) if n_total > 1 else 1.0
    return 2 * 102.0 / (n_total * d_avg)


def residual_objective(
    design: NulaDesign, n_sub: int, theta1: float, resolution_deg: float = 0.01
) -> float:
    """Worst ``|leakage|`` outside the main-beam window, from a dense sweep."""
    geom = design.geometry(n_sub)
    thetas_deg = angle_grid_deg(resolution_deg)
    halfwidth = main_beam_halfwidth_deg(geom.size, geom.aperture)
    mask = np.abs(thetas_deg - math.degrees(theta1)) > halfwidth
    if not mask.any():
        return 0.0
    af = array_factor(geom, theta1, np.radians(thetas_deg[mask]))
    return float(af.max())


def optimize_finite_n(
    req: DesignRequest,
    n_sub: int,
    candidates: Sequence[NulaDesign],
    theta1: float,
    resolution_deg: float = 0.01,
) -> NulaDesign:
    """Pick the certified candidate with the smallest worst residual leakage at finite N."""
    if not candidates:
        raise NulaError("no candidate designs given")
    theta1 = check_angle(theta1, "theta1")
    valid = [c for c in (certify(c, req.d, req.theta_max) for c in candidates) if c.certified]
    if not valid:
        raise InfeasibleDesignError("no candidate passes grating-lobe cancellation")
    if len(valid) == 1:
        return valid[0]
    scores = [residual_objective(c, n_sub, theta1, resolution_deg) for c in valid]
    return valid[int(np.argmin(scores))]
