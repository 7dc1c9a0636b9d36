"""
============================================================================
Field Mode Bath
============================================================================
Weighted discretizations of field-mode space:

    - direction_grid:     Gauss-Legendre in cos(theta) x uniform azimuth,
                          weights summing to 4*pi
    - frequency_grid:     Gauss-Legendre nodes on a window around omega_A
    - polarization_basis: deterministic transverse pair per direction
    - build_mode_grid:    direction x frequency x polarization enumeration

Usage:
    from physics.modes import direction_grid, frequency_grid, build_mode_grid

    dirs = direction_grid(n_polar=8, n_azimuth=16)
    freqs = frequency_grid(center=1.0, halfwidth=0.01, n=301)
    grid = build_mode_grid(dirs, freqs)
    len(grid)      # 2 * 128 * 301
============================================================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from physics.errors import DomainError

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-12
POLE_TOLERANCE = 1e-8

MIN_POLAR = 2
MIN_AZIMUTH = 4
MIN_FREQUENCIES = 2

_X_HAT = np.array([1.0, 0.0, 0.0])
_Z_HAT = np.array([0.0, 0.0, 1.0])


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.setflags(write=False)
    return array


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class Mode:
    """
    One field mode.

    Attributes:
        kappa:        Propagation direction (unit vector).
        omega:        Angular frequency.
        polarization: Polarization index, 1 or 2.
        eps_vec:      Polarization vector, transverse to kappa.
    """

    kappa: tuple[float, float, float]
    omega: float
    polarization: int
    eps_vec: tuple[float, float, float]

    def __post_init__(self) -> None:
        kappa = np.asarray(self.kappa, dtype=float)
        eps = np.asarray(self.eps_vec, dtype=float)
        if kappa.shape != (3,) or eps.shape != (3,):
            raise DomainError("kappa and eps_vec must be 3-vectors")
        if abs(np.linalg.norm(kappa) - 1.0) > UNIT_TOLERANCE:
            raise DomainError(f"|kappa| must be 1, got {np.linalg.norm(kappa)!r}")
        if abs(np.linalg.norm(eps) - 1.0) > UNIT_TOLERANCE:
            raise DomainError(f"|eps_vec| must be 1, got {np.linalg.norm(eps)!r}")
        if abs(float(kappa @ eps)) > UNIT_TOLERANCE:
            raise DomainError(f"eps_vec must be transverse, kappa.eps = {kappa @ eps!r}")
        if not math.isfinite(self.omega) or self.omega <= 0.0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if self.polarization not in (1, 2):
            raise DomainError(f"polarization must be 1 or 2, got {self.polarization}")
        object.__setattr__(self, "kappa", tuple(float(x) for x in kappa))
        object.__setattr__(self, "eps_vec", tuple(float(x) for x in eps))
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def k_vector(self) -> np.ndarray:
        """c times the wave vector, kappa*omega."""
        return np.asarray(self.kappa) * self.omega


@dataclass(frozen=True)
class DirectionGrid:
    """Unit directions (n, 3) with solid-angle weights (n,)."""

    kappa: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", _frozen(self.kappa))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.kappa.ndim != 2 or self.kappa.shape[1:] != (3,) or self.kappa.shape[0] != self.weights.shape[0]:
            raise DomainError("directions must be (n, 3) with one weight each")
        if np.any(self.weights <= 0.0):
            raise DomainError("direction weights must be > 0")

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def __iter__(self) -> Iterator[tuple[np.ndarray, float]]:
        for kappa, weight in zip(self.kappa, self.weights):
            yield kappa, float(weight)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted sum over directions of per-direction values (n,) or (n, ...)."""
        return np.tensordot(self.weights, np.asarray(values), axes=(0, 0))


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing frequency nodes (n,) with weights (n,)."""

    omega: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega", _frozen(self.omega))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.omega.shape != self.weights.shape or np.any(self.weights <= 0.0):
            raise DomainError("frequency weights must be > 0, one per node")
        if np.any(np.diff(self.omega) <= 0.0):
            raise DomainError("frequency nodes must be strictly increasing")

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def __iter__(self) -> Iterator[tuple[float, float]]:
        for omega, weight in zip(self.omega, self.weights):
            yield float(omega), float(weight)

    @property
    def lower(self) -> float:
        return float(self.omega[0])

    @property
    def upper(self) -> float:
        return float(self.omega[-1])

    @property
    def min_spacing(self) -> float:
        return float(np.min(np.diff(self.omega)))

    @property
    def recurrence_time(self) -> float:
        """2*pi over the smallest node spacing."""
        return 2.0 * math.pi / self.min_spacing


@dataclass(frozen=True)
class ModeGrid:
    """
    Enumeration of every (direction, frequency, polarization) triple.

    Mode arrays are flattened direction-major, then frequency, then
    polarization, so mode ``i`` has direction ``i // (2*n_freq)``.
    """

    directions: DirectionGrid
    frequencies: FrequencyGrid
    kappa: np.ndarray          # (N, 3)
    omega: np.ndarray          # (N,)
    eps_vec: np.ndarray        # (N, 3)
    polarization: np.ndarray   # (N,) values 1 or 2
    w_dir: np.ndarray          # (N,)
    w_om: np.ndarray           # (N,)

    def __len__(self) -> int:
        return int(self.omega.shape[0])

    def __iter__(self) -> Iterator[Mode]:
        return self.modes()

    def modes(self) -> Iterator[Mode]:
        for i in range(len(self)):
            yield self.mode(i)

    def mode(self, index: int) -> Mode:
        return Mode(
            kappa=tuple(self.kappa[index]),
            omega=float(self.omega[index]),
            polarization=int(self.polarization[index]),
            eps_vec=tuple(self.eps_vec[index]),
        )

    @property
    def k_vectors(self) -> np.ndarray:
        """Wave vectors kappa*omega for every mode, (N, 3)."""
        return self.kappa * self.omega[:, None]

    @property
    def measure(self) -> float:
        """Sum of w_dir * w_om over distinct (direction, frequency) pairs."""
        return float(np.sum(self.directions.weights) * np.sum(self.frequencies.weights))


# ======================================================================
# Polarization basis
# ======================================================================

def polarization_basis_array(kappa: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Vectorized polarization basis for directions of shape (n, 3).

    eps1 is z x kappa normalized, falling back to x near the poles;
    eps2 = kappa x eps1 completes a right-handed triad.
    """
    kappa = np.atleast_2d(np.asarray(kappa, dtype=float))
    norms = np.linalg.norm(kappa, axis=1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOLERANCE):
        raise DomainError("polarization_basis needs unit directions")
    z_cross = np.cross(_Z_HAT, kappa)
    z_norm = np.linalg.norm(z_cross, axis=1)
    at_pole = z_norm <= POLE_TOLERANCE
    # near the poles: x projected onto the transverse plane
    x_trans = _X_HAT[None, :] - kappa * kappa[:, :1]
    x_norm = np.linalg.norm(x_trans, axis=1)
    x_trans /= np.where(x_norm > 0.0, x_norm, 1.0)[:, None]
    eps1 = np.where(
        at_pole[:, None],
        x_trans,
        z_cross / np.where(at_pole, 1.0, z_norm)[:, None],
    )
    eps2 = np.cross(kappa, eps1)
    return eps1, eps2


def polarization_basis(kappa: np.ndarray | tuple[float, float, float]) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal transverse pair (eps1, eps2) for a single unit direction."""
    kappa = np.asarray(kappa, dtype=float)
    if kappa.shape != (3,):
        raise DomainError("kappa must be a 3-vector")
    eps1, eps2 = polarization_basis_array(kappa[None, :])
    return eps1[0], eps2[0]


# ======================================================================
# Quadratures
# ======================================================================

def direction_grid(n_polar: int, n_azimuth: int) -> DirectionGrid:
    """
    Product quadrature over the unit sphere.

    Gauss-Legendre in cos(theta) is exact for polynomials of degree
    2*n_polar - 1 in kappa_z; the midpoint azimuth rule is exact for
    trigonometric degree n_azimuth - 1. With even n_azimuth every
    direction's antipode is also a node.
    """
    if n_polar < MIN_POLAR:
        raise DomainError(f"n_polar must be >= {MIN_POLAR}, got {n_polar}")
    if n_azimuth < MIN_AZIMUTH:
        raise DomainError(f"n_azimuth must be >= {MIN_AZIMUTH}, got {n_azimuth}")

    mu, w_mu = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * math.pi * (np.arange(n_azimuth) + 0.5) / n_azimuth
    w_phi = 2.0 * math.pi / n_azimuth

    sin_theta = np.sqrt(1.0 - mu**2)
    kappa = np.stack(
        [
            np.outer(sin_theta, np.cos(phi)).ravel(),
            np.outer(sin_theta, np.sin(phi)).ravel(),
            np.repeat(mu, n_azimuth),
        ],
        axis=1,
    )
    # exact renormalization keeps |kappa| = 1 at rounding level
    kappa /= np.linalg.norm(kappa, axis=1)[:, None]
    weights = np.repeat(w_mu * w_phi, n_azimuth)
    logger.debug("Direction grid %dx%d: %d nodes", n_polar, n_azimuth, weights.size)
    return DirectionGrid(kappa=kappa, weights=weights)


def frequency_grid(center: float, halfwidth: float, n: int) -> FrequencyGrid:
    """Gauss-Legendre nodes and weights on [center - halfwidth, center + halfwidth]."""
    if n < MIN_FREQUENCIES:
        raise DomainError(f"n must be >= {MIN_FREQUENCIES}, got {n}")
    if not (math.isfinite(center) and math.isfinite(halfwidth)) or halfwidth <= 0.0:
        raise DomainError(f"halfwidth must be finite and > 0, got {halfwidth}")
    if center - halfwidth <= 0.0:
        raise DomainError(
            f"frequency window [{center - halfwidth:g}, {center + halfwidth:g}] reaches omega <= 0"
        )
    x, w = np.polynomial.legendre.leggauss(n)
    return FrequencyGrid(omega=center + halfwidth * x, weights=halfwidth * w)


def build_mode_grid(directions: DirectionGrid, frequencies: FrequencyGrid) -> ModeGrid:
    """Enumerate 2 * |directions| * |frequencies| modes with their measure weights."""
    n_dir, n_freq = len(directions), len(frequencies)
    if n_dir == 0 or n_freq == 0:
        raise DomainError("mode grid needs at least one direction and one frequency")

    eps1, eps2 = polarization_basis_array(directions.kappa)
    shape = (n_dir, n_freq, 2)

    kappa = np.broadcast_to(directions.kappa[:, None, None, :], shape + (3,))
    eps = np.broadcast_to(np.stack([eps1, eps2], axis=1)[:, None, :, :], shape + (3,))
    omega = np.broadcast_to(frequencies.omega[None, :, None], shape)
    w_dir = np.broadcast_to(directions.weights[:, None, None], shape)
    w_om = np.broadcast_to(frequencies.weights[None, :, None], shape)
    polarization = np.broadcast_to(np.array([1, 2])[None, None, :], shape)

    grid = ModeGrid(
        directions=directions,
        frequencies=frequencies,
        kappa=_frozen(kappa.reshape(-1, 3)),
        omega=_frozen(omega.reshape(-1)),
        eps_vec=_frozen(eps.reshape(-1, 3)),
        polarization=np.ascontiguousarray(polarization.reshape(-1)),
        w_dir=_frozen(w_dir.reshape(-1)),
        w_om=_frozen(w_om.reshape(-1)),
    )
    logger.debug("Mode grid: %d directions x %d frequencies -> %d modes", n_dir, n_freq, len(grid))
    return grid
