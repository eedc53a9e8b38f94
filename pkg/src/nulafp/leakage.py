"""
Inter-user interference leakage factors.

The leakage factor between the main user at ``theta1`` and an interferer at
``thetai`` is the normalized inner product ``h1^H hi / N`` of their channel
vectors. For uniform spacings it is a Dirichlet kernel; for the
block-partitioned NULA it factors into a subarray term and a block term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from .exceptions import DimensionError, InvalidIndexError, NonDistinctAoAError
from .geometry import Geometry, NulaGeometry, UlaGeometry, check_angle
from .grating import gl_enumerate

SINGULAR_TOL = 1e-12
ANGLE_MATCH_TOL = 1e-9


def _sign_of_parity(m):
    return 1 - 2 * (np.asarray(m) % 2)


def dirichlet(n: int, u):
    """Normalized geometric phasor sum ``(1/n) sum_{m<n} exp(j 2 pi m u)``.

    ``u`` is the inter-element phase step in cycles and may be an array.
    Uses ``sin(pi n u) / (n sin(pi u)) * exp(j pi (n-1) u)`` after folding
    ``u`` onto the nearest integer so that grating-lobe alignments keep full
    precision. Where ``|sin(pi u)| < 1e-12`` the removable singularity is
    replaced by its limit, which has modulus one.
    """
    u = np.asarray(u, dtype=float)
    m = np.rint(u)
    r = u - m
    sign = _sign_of_parity(m.astype(np.int64) * (n - 1))
    den = np.sin(np.pi * r)
    singular = np.abs(den) < SINGULAR_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(singular, 1.0, np.sin(np.pi * n * r) / (n * np.where(singular, 1.0, den)))
    phase = np.exp(1j * np.pi * np.remainder((n - 1) * u, 2.0))
    out = sign * ratio * phase
    return out if out.ndim else complex(out)


def _sinpi_exact(q: Fraction) -> float:
    q = q % 2
    if q.denominator == 1:
        return 0.0
    return math.sin(math.pi * float(q))


def dirichlet_exact(n: int, u: Fraction) -> complex:
    """:func:`dirichlet` for a rational phase step, with exact zero detection.

    Integer multiples of pi in the sine arguments are recognized in rational
    arithmetic, so a null of the kernel evaluates to exactly ``0``.
    """
    u = Fraction(u)
    m = round(u)
    r = u - m
    sign = 1 - 2 * ((m * (n - 1)) % 2)
    if r == 0:
        ratio = 1.0
    else:
        ratio = _sinpi_exact(n * r) / (n * _sinpi_exact(r))
    if ratio == 0.0:
        return 0j
    t = float(((n - 1) * u) % 2)
    return complex(sign * ratio * complex(math.cos(math.pi * t), math.sin(math.pi * t)))


def leakage_direct(h1, hi) -> complex:
    """Brute-force leakage ``h1^H hi / len(h1)``."""
    h1 = np.asarray(h1)
    hi = np.asarray(hi)
    if h1.shape != hi.shape or h1.ndim != 1:
        raise DimensionError(f"steering vectors must be 1-D and equal length, got {h1.shape} and {hi.shape}")
    if h1.size == 0:
        raise DimensionError("steering vectors must be non-empty")
    return complex(np.vdot(h1, hi) / h1.size)


def _ula_leakage(n: int, d: float, theta1: float, thetai):
    u = d * (np.sin(thetai) - math.sin(theta1))
    return dirichlet(n, u)


def leakage_ula_closed(geom: UlaGeometry, theta1: float, thetai: float) -> complex:
    """Closed-form ULA leakage between users at ``theta1`` and ``thetai``."""
    theta1 = check_angle(theta1, "theta1")
    thetai = check_angle(thetai, "thetai")
    return complex(_ula_leakage(geom.n_elements, geom.spacing, theta1, thetai))


def leakage_nula_factored(
    geom: NulaGeometry, theta1: float, thetai: float
) -> Tuple[complex, complex, complex]:
    """NULA leakage as ``(overall, subarray, block)`` with ``overall = subarray * block``."""
    sub = leakage_ula_closed(geom.subarray, theta1, thetai)
    block = leakage_ula_closed(geom.block_array, theta1, thetai)
    return sub * block, sub, block


def leakage_closed(geom: Geometry, theta1: float, thetai: float) -> complex:
    """Closed-form leakage for either geometry type."""
    if isinstance(geom, NulaGeometry):
        return leakage_nula_factored(geom, theta1, thetai)[0]
    return leakage_ula_closed(geom, theta1, thetai)


def array_factor(geom: Geometry, theta1: float, thetas) -> np.ndarray:
    """``|leakage(theta1, theta)|`` over an array of probe angles (radians)."""
    theta1 = check_angle(theta1, "theta1")
    thetas = np.asarray(thetas, dtype=float)
    if np.any(np.abs(thetas) > math.pi / 2 + 1e-12):
        raise ValueError("probe angles must lie in [-pi/2, pi/2]")
    if isinstance(geom, NulaGeometry):
        sub = geom.subarray
        blk = geom.block_array
        alpha = _ula_leakage(sub.n_elements, sub.spacing, theta1, thetas) * _ula_leakage(
            blk.n_elements, blk.spacing, theta1, thetas
        )
    else:
        alpha = _ula_leakage(geom.n_elements, geom.spacing, theta1, thetas)
    return np.abs(alpha)


def block_leakage_at_gl(design, k: int) -> complex:
    """Block-array leakage when the interferer sits on subarray grating lobe ``k``.

    Depends only on ``N_b``, the gap ratio ``block_gap / d`` and ``k``, not on
    the subarray size. ``design`` may be a :class:`NulaGeometry` (float gap
    ratio) or a ``NulaDesign`` whose rational gap ratio ``p / N_b`` makes the
    designed nulls come out exactly zero.
    """
    k = int(k)
    if k == 0:
        raise InvalidIndexError("k=0 is the main beam, not a grating lobe")
    n_blocks = design.n_blocks
    ratio = design.gap_ratio
    if isinstance(ratio, Fraction):
        return dirichlet_exact(n_blocks, k * ratio)
    return complex(dirichlet(n_blocks, k * ratio))


class Limit(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    BLOCK_VALUE = "block_value"


@dataclass(frozen=True)
class AsymptoticClass:
    """Limit of the leakage factor as the (sub)array size grows without bound."""

    limit: Limit
    value: complex = 0j
    k: Union[int, None] = None

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def classify_asymptotic(geom: Geometry, theta1: float, thetai: float) -> AsymptoticClass:
    """Classify ``lim_{N->inf} |leakage|`` for distinct angles of arrival.

    For a ULA the limit is one when ``thetai`` sits on a grating lobe and zero
    otherwise. For a NULA (block count fixed, subarray size growing) the limit
    on grating lobe ``k`` is the block leakage at that lobe.
    """
    theta1 = check_angle(theta1, "theta1")
    thetai = check_angle(thetai, "thetai")
    if abs(thetai - theta1) <= ANGLE_MATCH_TOL:
        raise NonDistinctAoAError("favorable propagation needs distinct angles of arrival")
    d = geom.subarray.spacing if isinstance(geom, NulaGeometry) else geom.spacing
    for k, phi in gl_enumerate(d, theta1):
        if abs(thetai - phi) <= ANGLE_MATCH_TOL:
            if isinstance(geom, NulaGeometry):
                return AsymptoticClass(Limit.BLOCK_VALUE, block_leakage_at_gl(geom, k), k)
            return AsymptoticClass(Limit.ONE, 1 + 0j, k)
    return AsymptoticClass(Limit.ZERO)


def decay_bound(n: int, d: float, theta1: float, thetai: float) -> float:
    """Upper bound ``1 / (N |sin(dpsi/2)|)`` on the ULA leakage magnitude."""
    u = d * (math.sin(thetai) - math.sin(theta1))
    s = abs(math.sin(math.pi * (u - round(u))))
    return math.inf if s == 0 else 1.0 / (n * s)
