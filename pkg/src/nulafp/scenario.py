"""
Multi-user matched-filter SINR, element patterns and favorable-propagation sweeps.

Noise power is fixed at one; each user's SNR absorbs its path loss.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .exceptions import DegenerateChannelError, NulaError
from .geometry import HALF_PI, Geometry, NulaGeometry, UlaGeometry, check_angle, steering_vector


class ElementPattern(enum.Enum):
    OMNI = "omni"
    SHORT_DIPOLE = "short_dipole"

    def gain(self, theta: float) -> float:
        if self is ElementPattern.SHORT_DIPOLE:
            # cos(pi/2) is 6e-17 in floating point; endfire is an exact null
            return 0.0 if abs(theta) >= HALF_PI else math.cos(theta)
        return 1.0


@dataclass(frozen=True)
class Path:
    aoa: float  # radians
    gain: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "aoa", check_angle(self.aoa, "aoa"))
        object.__setattr__(self, "gain", complex(self.gain))


@dataclass(frozen=True)
class User:
    paths: Tuple[Path, ...]
    snr: float  # linear

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        if not self.paths:
            raise ValueError("a user needs at least one path")
        if not (self.snr > 0 and math.isfinite(self.snr)):
            raise ValueError(f"snr must be positive, got {self.snr!r}")

    @classmethod
    def los(cls, aoa: float, snr: float) -> "User":
        """Single unit-gain line-of-sight path."""
        return cls((Path(aoa),), snr)


@dataclass(frozen=True)
class UserScenario:
    users: Tuple[User, ...]
    main_user: int = 0
    element_pattern: ElementPattern = ElementPattern.OMNI

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        object.__setattr__(self, "element_pattern", ElementPattern(self.element_pattern))
        if not self.users:
            raise ValueError("a scenario needs at least one user")
        if not 0 <= self.main_user < len(self.users):
            raise ValueError(f"main_user={self.main_user} is out of range")

    @property
    def interferers(self) -> List[int]:
        return [i for i in range(len(self.users)) if i != self.main_user]


@dataclass(frozen=True)
class SinrReport:
    sinr: float
    snr_main: float
    interferers: List[int] = field(default_factory=list)
    per_user_leakage: List[float] = field(default_factory=list)
    total_leakage: float = 0.0

    @property
    def fp_gap(self) -> float:
        """``snr_main - sinr``; zero when favorable propagation is attained."""
        return self.snr_main - self.sinr

    @property
    def sinr_db(self) -> float:
        return 10 * math.log10(self.sinr)


def _channel(geom: Geometry, user: User, pattern: ElementPattern) -> Tuple[np.ndarray, float]:
    """Return (patterned channel, norm of the omnidirectional channel)."""
    omni = np.zeros(geom.size, dtype=complex)
    shaped = np.zeros(geom.size, dtype=complex)
    for path in user.paths:
        h = path.gain * steering_vector(geom, path.aoa)
        omni += h
        shaped += pattern.gain(path.aoa) * h
    norm = float(np.linalg.norm(omni))
    if norm == 0.0:
        raise DegenerateChannelError("user channel has zero total gain")
    return shaped, norm


def build_channel(geom: Geometry, user: User) -> np.ndarray:
    """Superpose ``gain * steering_vector`` over a user's paths (no renormalization)."""
    return _channel(geom, user, ElementPattern.OMNI)[0]


def user_leakage(
    geom: Geometry, main: User, other: User, pattern: ElementPattern = ElementPattern.OMNI
) -> complex:
    """Leakage ``h1^H hi / (|h1| |hi|)``; equals ``h1^H hi / N`` for unit-gain LOS users.

    Norms are those of the omnidirectional channels, so a directional element
    pattern scales the leakage rather than cancelling out.
    """
    h1, n1 = _channel(geom, main, pattern)
    hi, ni = _channel(geom, other, pattern)
    return complex(np.vdot(h1, hi) / (n1 * ni))


def apply_element_pattern(
    alpha: complex, theta1: float, thetai: float, pattern: ElementPattern
) -> complex:
    """Leakage for directional elements: omni leakage times both element gains."""
    pattern = ElementPattern(pattern)
    theta1 = check_angle(theta1, "theta1")
    thetai = check_angle(thetai, "thetai")
    return complex(alpha) * pattern.gain(theta1) * pattern.gain(thetai)


def sinr_from_leakage(snr_main: float, leakages_sq: Sequence[float], snrs: Sequence[float]) -> float:
    """Matched-filter SINR ``g1 / (sum |a_i|^2 g_i + 1)``."""
    return snr_main / (math.fsum(a * g for a, g in zip(leakages_sq, snrs)) + 1.0)


def sinr_equal_snr(snr: float, total_leakage: float) -> float:
    """SINR when every user has SNR ``snr``: ``1 / (total_leakage + 1/snr)``."""
    return 1.0 / (total_leakage + 1.0 / snr)


def compute_sinr(geom: Geometry, scenario: UserScenario) -> SinrReport:
    """Matched-filter SINR of the main user, treating every other user as interference."""
    main = scenario.users[scenario.main_user]
    idx = scenario.interferers
    leak = [abs(user_leakage(geom, main, scenario.users[i], scenario.element_pattern)) ** 2 for i in idx]
    snrs = [scenario.users[i].snr for i in idx]
    return SinrReport(
        sinr=sinr_from_leakage(main.snr, leak, snrs),
        snr_main=main.snr,
        interferers=idx,
        per_user_leakage=leak,
        total_leakage=math.fsum(leak),
    )


def ula_family(d: float) -> Callable[[int], UlaGeometry]:
    return lambda n: UlaGeometry(n, d)


def nula_family(n_blocks: int, p: int, d: float) -> Callable[[int], NulaGeometry]:
    """Coprime NULAs with fixed ``(N_b, p, d)`` and subarray size as the parameter."""
    return lambda n: NulaGeometry.from_design(n_blocks, p, n, d)


@dataclass(frozen=True)
class SweepRow:
    n: int
    total_leakage: float
    sinr: float


def fp_convergence_sweep(
    geom_family: Callable[[int], Geometry], scenario: UserScenario, n_values: Sequence[int]
) -> List[SweepRow]:
    """Total leakage and SINR as the array parameter ``N`` grows."""
    if not n_values:
        raise NulaError("n_values is empty")
    rows = []
    for n in n_values:
        rep = compute_sinr(geom_family(int(n)), scenario)
        rows.append(SweepRow(int(n), rep.total_leakage, rep.sinr))
    return rows
