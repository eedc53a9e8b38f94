"""
Array geometries and far-field steering vectors.

All spacings are in wavelengths and all angles are in radians, measured
from broadside and restricted to the front half-plane [-pi/2, pi/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import InvalidAngleError

HALF_PI = math.pi / 2
_ANGLE_SLACK = 1e-12


def check_angle(theta: float, name: str = "theta") -> float:
    """Validate a front half-plane angle and return it as a float.

    Values within 1e-12 rad outside +-pi/2 are clipped onto the endfire
    direction so that degree conversions of +-90 never fail.
    """
    theta = float(theta)
    if not math.isfinite(theta) or abs(theta) > HALF_PI + _ANGLE_SLACK:
        raise InvalidAngleError(
            f"{name}={theta!r} rad is outside the front half-plane [-pi/2, pi/2]"
        )
    return max(-HALF_PI, min(HALF_PI, theta))


def angle_grid_deg(resolution_deg: float) -> np.ndarray:
    """``-90 .. 90`` in steps of ``resolution_deg``, rounded so grid points are exact decimals."""
    if not resolution_deg > 0:
        raise ValueError("resolution must be positive")
    n = int(math.floor(180.0 / resolution_deg + 1e-9))
    grid = np.round(-90.0 + np.arange(n + 1) * resolution_deg, 10)
    if grid[-1] < 90.0:
        grid = np.append(grid, 90.0)
    return grid


@dataclass(frozen=True)
class UlaGeometry:
    """Uniform linear array ULA(N, d).

    Parameters
    ----------
    n_elements : int
        Number of elements N.
    spacing : float
        Element spacing d in wavelengths.
    """

    n_elements: int
    spacing: float

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements!r}")
        if not (self.spacing > 0 and math.isfinite(self.spacing)):
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        object.__setattr__(self, "n_elements", int(self.n_elements))
        object.__setattr__(self, "spacing", float(self.spacing))

    @property
    def size(self) -> int:
        return self.n_elements

    @property
    def aperture(self) -> float:
        return (self.n_elements - 1) * self.spacing

    def positions(self) -> np.ndarray:
        return np.arange(self.n_elements) * self.spacing


@dataclass(frozen=True)
class NulaGeometry:
    """Block-partitioned NULA: ``n_blocks`` copies of ``subarray`` separated by ``block_gap``.

    The block pitch is ``D = (N - 1) d + block_gap``, so the blocks themselves
    form ULA(n_blocks, D).
    """

    n_blocks: int
    subarray: UlaGeometry
    block_gap: float

    def __post_init__(self):
        if int(self.n_blocks) != self.n_blocks or self.n_blocks < 1:
            raise ValueError(f"n_blocks must be a positive integer, got {self.n_blocks!r}")
        if not (self.block_gap > 0 and math.isfinite(self.block_gap)):
            raise ValueError(f"block_gap must be positive, got {self.block_gap!r}")
        object.__setattr__(self, "n_blocks", int(self.n_blocks))
        object.__setattr__(self, "block_gap", float(self.block_gap))

    @classmethod
    def from_design(cls, n_blocks: int, p: int, n_sub: int, spacing: float) -> "NulaGeometry":
        """Geometry with gap ``p * spacing / n_blocks``."""
        return cls(n_blocks, UlaGeometry(n_sub, spacing), p * spacing / n_blocks)

    @property
    def block_pitch(self) -> float:
        return (self.subarray.n_elements - 1) * self.subarray.spacing + self.block_gap

    @property
    def gap_ratio(self) -> float:
        """``block_gap / d``."""
        return self.block_gap / self.subarray.spacing

    @property
    def block_array(self) -> UlaGeometry:
        """The ULA(N_b, D) formed by treating each block as one element."""
        return UlaGeometry(self.n_blocks, self.block_pitch)

    @property
    def size(self) -> int:
        return self.n_blocks * self.subarray.n_elements

    @property
    def aperture(self) -> float:
        return (self.n_blocks - 1) * self.block_pitch + self.subarray.aperture

    def positions(self, order: str = "position") -> np.ndarray:
        """Element coordinates in wavelengths.

        ``order="position"`` lists elements left to right (block-major);
        ``order="kron"`` lists them in subarray-major order, matching
        ``h_sub kron h_block``.
        """
        blocks = np.arange(self.n_blocks)[:, None] * self.block_pitch
        elems = np.arange(self.subarray.n_elements)[None, :] * self.subarray.spacing
        grid = blocks + elems  # [block, element]
        if order == "position":
            return grid.ravel()
        if order == "kron":
            return grid.T.ravel()
        raise ValueError(f"unknown order {order!r}")


Geometry = Union[UlaGeometry, NulaGeometry]


def _phases(positions: np.ndarray, theta: float) -> np.ndarray:
    return np.exp(2j * np.pi * positions * math.sin(theta))


def steering_from_positions(positions, theta: float) -> np.ndarray:
    """Unit-modulus phase vector ``exp(j 2 pi x sin(theta))`` for arbitrary element coordinates."""
    theta = check_angle(theta)
    return _phases(np.asarray(positions, dtype=float), theta)


def steering_ula(geom: UlaGeometry, theta: float) -> np.ndarray:
    """Steering vector of ULA(N, d): entry n is ``exp(j 2 pi n d sin(theta))``."""
    theta = check_angle(theta)
    return _phases(geom.positions(), theta)


def steering_block(geom: NulaGeometry, theta: float) -> np.ndarray:
    """Steering vector of the block array ULA(N_b, D)."""
    return steering_ula(geom.block_array, theta)


def steering_nula(geom: NulaGeometry, theta: float, order: str = "position") -> np.ndarray:
    """Steering vector of the full block-partitioned NULA, length ``N * N_b``.

    Built as a Kronecker product of the subarray and block steering vectors.
    ``order="kron"`` returns ``h_sub kron h_block`` (subarray index major);
    the default ``order="position"`` returns ``h_block kron h_sub``, i.e. the
    same entries listed by physical element position. Inner products between
    two vectors of the same order do not depend on the choice.
    """
    h_sub = steering_ula(geom.subarray, theta)
    h_blk = steering_block(geom, theta)
    if order == "position":
        return np.kron(h_blk, h_sub)
    if order == "kron":
        return np.kron(h_sub, h_blk)
    raise ValueError(f"unknown order {order!r}")


def steering_vector(geom: Geometry, theta: float) -> np.ndarray:
    """Dispatch to :func:`steering_ula` or :func:`steering_nula`."""
    if isinstance(geom, NulaGeometry):
        return steering_nula(geom, theta)
    return steering_ula(geom, theta)


def element_positions(geom: Geometry) -> np.ndarray:
    """Element coordinates in physical order for either geometry type."""
    return geom.positions()
