"""
============================================================================
Physical Scenario & Natural Units
============================================================================
The moving two-level atom, its dimensionless small parameters and the unit
conventions every engine consumes.

Engines work in natural units (hbar = c = eps0 = 1). An SI scenario is
rescaled to omega_A = 1 on the way in, and results are converted back with
the matching UnitScale on the way out.

Usage:
    from physics.scales import AtomParams, small_params, resolve_scenario

    atom = AtomParams.from_small(epsilon=1e-3, beta=(0.0, 0.0, 1e-3))
    small_params(atom).epsilon         # 0.001
    reduced, scale = resolve_scenario(atom)
============================================================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

import numpy as np
import scipy.constants as SI

from physics.errors import DomainError

logger = logging.getLogger(__name__)

# First-order expansion regime: epsilon and |beta| at or below this value.
REGIME_LIMIT = 0.1

UNIT_TOLERANCE = 1e-12

Vector3 = tuple[float, float, float]


# ======================================================================
# Unit systems
# ======================================================================

class UnitSystem(str, Enum):
    """Unit convention a scenario is expressed in."""

    NATURAL = "natural"
    SI = "si"


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar, c and eps0 of one unit system."""

    hbar: float
    c: float
    epsilon_0: float


NATURAL_CONSTANTS = PhysicalConstants(hbar=1.0, c=1.0, epsilon_0=1.0)
SI_CONSTANTS = PhysicalConstants(hbar=SI.hbar, c=SI.c, epsilon_0=SI.epsilon_0)


def constants_for(unit_system: UnitSystem | str) -> PhysicalConstants:
    """Return the constants of ``unit_system``."""
    if UnitSystem(unit_system) is UnitSystem.SI:
        return SI_CONSTANTS
    return NATURAL_CONSTANTS


@dataclass(frozen=True)
class UnitScale:
    """
    Conversion factors from natural-unit engine output back to the
    caller's unit system. All factors are 1 for natural-unit scenarios.
    """

    rate: float = 1.0          # 1/time
    momentum: float = 1.0      # hbar*omega_A/c
    mass: float = 1.0          # hbar*omega_A/c^2
    energy: float = 1.0        # hbar*omega_A

    @property
    def time(self) -> float:
        return 1.0 / self.rate


# ======================================================================
# Vector helpers
# ======================================================================

def as_vector3(values: Sequence[float] | np.ndarray, name: str) -> Vector3:
    """Coerce a length-3 sequence to a tuple of finite floats."""
    arr = np.asarray(values, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise DomainError(f"{name} must have 3 components, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {tuple(arr)}")
    return (float(arr[0]), float(arr[1]), float(arr[2]))


def unit_vector(values: Sequence[float] | np.ndarray, name: str = "vector") -> Vector3:
    """Normalize a non-zero 3-vector."""
    arr = np.asarray(as_vector3(values, name))
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise DomainError(f"{name} must be non-zero")
    return as_vector3(arr / norm, name)


def _require_finite_positive(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    if value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value}")
    return value


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class AtomParams:
    """
    The physical scenario: an excited two-level atom with canonical
    momentum p0.

    Attributes:
        omega_A:     Transition angular frequency.
        d:           Dipole magnitude.
        e_d:         Dipole orientation (unit vector).
        M:           Atomic mass.
        p0:          Initial canonical momentum.
        unit_system: ``natural`` (hbar = c = eps0 = 1) or ``si``.
    """

    omega_A: float
    d: float
    e_d: Vector3 = (0.0, 0.0, 1.0)
    M: float = 1.0
    p0: Vector3 = (0.0, 0.0, 0.0)
    unit_system: UnitSystem = UnitSystem.NATURAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega_A", _require_finite_positive(self.omega_A, "omega_A"))
        object.__setattr__(self, "d", _require_finite_positive(self.d, "d"))
        object.__setattr__(self, "M", _require_finite_positive(self.M, "M"))
        object.__setattr__(self, "p0", as_vector3(self.p0, "p0"))
        e_d = as_vector3(self.e_d, "e_d")
        if abs(float(np.linalg.norm(e_d)) - 1.0) > UNIT_TOLERANCE:
            raise DomainError(f"e_d must be a unit vector, |e_d| = {np.linalg.norm(e_d)!r}")
        object.__setattr__(self, "e_d", e_d)
        object.__setattr__(self, "unit_system", UnitSystem(self.unit_system))

    @classmethod
    def from_small(
        cls,
        epsilon: float,
        beta: Sequence[float] = (0.0, 0.0, 0.0),
        omega_A: float = 1.0,
        d: float = 1.0,
        e_d: Sequence[float] = (0.0, 0.0, 1.0),
    ) -> "AtomParams":
        """Natural-unit atom with mass omega_A/epsilon and momentum beta*M."""
        epsilon = _require_finite_positive(epsilon, "epsilon")
        mass = omega_A / epsilon
        p0 = np.asarray(as_vector3(beta, "beta")) * mass
        return cls(omega_A=omega_A, d=d, e_d=unit_vector(e_d, "e_d"), M=mass, p0=p0)

    @property
    def constants(self) -> PhysicalConstants:
        return constants_for(self.unit_system)

    @property
    def dipole_vector(self) -> np.ndarray:
        return self.d * np.asarray(self.e_d)


@dataclass(frozen=True)
class SmallParams:
    """Dimensionless recoil parameter and velocity, with the regime flag."""

    epsilon: float
    beta: Vector3
    valid: bool

    @property
    def beta_norm(self) -> float:
        return float(np.linalg.norm(self.beta))


@dataclass(frozen=True)
class ReducedAtom:
    """
    Natural-unit scenario expressed through its small parameters only.

    epsilon = 0 with beta != 0 is the infinitely heavy atom at fixed
    velocity; such a scenario has no finite canonical momentum.
    """

    omega_A: float = 1.0
    d: float = 1.0
    e_d: Vector3 = (0.0, 0.0, 1.0)
    epsilon: float = 0.0
    beta: Vector3 = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega_A", _require_finite_positive(self.omega_A, "omega_A"))
        d = float(self.d)
        if not math.isfinite(d) or d < 0.0:
            raise DomainError(f"d must be finite and >= 0, got {d}")
        object.__setattr__(self, "d", d)
        epsilon = float(self.epsilon)
        if not math.isfinite(epsilon) or epsilon < 0.0:
            raise DomainError(f"epsilon must be finite and >= 0, got {epsilon}")
        object.__setattr__(self, "epsilon", epsilon)
        object.__setattr__(self, "beta", as_vector3(self.beta, "beta"))
        object.__setattr__(self, "e_d", unit_vector(self.e_d, "e_d"))
        if float(np.linalg.norm(self.beta)) >= 1.0:
            raise DomainError(f"|beta| must be < 1, got {np.linalg.norm(self.beta)}")

    @property
    def dipole_vector(self) -> np.ndarray:
        return self.d * np.asarray(self.e_d)

    @property
    def beta_vector(self) -> np.ndarray:
        return np.asarray(self.beta)

    @property
    def inverse_mass(self) -> float:
        """1/M in natural units (epsilon/omega_A)."""
        return self.epsilon / self.omega_A

    @property
    def momentum(self) -> np.ndarray:
        """Canonical momentum p0 = beta*M; zero for a static infinitely heavy atom."""
        if self.epsilon == 0.0:
            if np.any(self.beta_vector != 0.0):
                raise DomainError("p0 is unbounded for epsilon = 0 with beta != 0")
            return np.zeros(3)
        return self.beta_vector * (self.omega_A / self.epsilon)


Scenario = Union[AtomParams, ReducedAtom]


# ======================================================================
# Operations
# ======================================================================

def small_params(atom: Scenario) -> SmallParams:
    """
    Recoil parameter epsilon = hbar*omega_A/(M c^2) and velocity
    beta = p0/(M c). The validity flag is false outside the first-order
    regime; computation is never refused on that ground.
    """
    if isinstance(atom, ReducedAtom):
        epsilon = atom.epsilon
        beta = atom.beta
    else:
        k = atom.constants
        epsilon = k.hbar * atom.omega_A / (atom.M * k.c**2)
        beta = tuple(float(p) / (atom.M * k.c) for p in atom.p0)
    if not math.isfinite(epsilon) or not all(math.isfinite(b) for b in beta):
        raise DomainError(f"non-finite small parameters: epsilon={epsilon}, beta={beta}")
    beta_norm = float(np.linalg.norm(beta))
    valid = epsilon <= REGIME_LIMIT and beta_norm <= REGIME_LIMIT
    if not valid:
        logger.debug("Scenario outside first-order regime: epsilon=%g |beta|=%g", epsilon, beta_norm)
    return SmallParams(epsilon=float(epsilon), beta=as_vector3(beta, "beta"), valid=valid)


def to_natural(atom: AtomParams) -> AtomParams:
    """
    Rescale an SI scenario to hbar = c = eps0 = 1 and omega_A = 1.
    Natural-unit scenarios are returned unchanged.
    """
    if atom.unit_system is UnitSystem.NATURAL:
        return atom
    k = atom.constants
    energy = k.hbar * atom.omega_A
    mass = atom.M * k.c**2 / energy
    p0 = np.asarray(atom.p0) * k.c / energy
    d = atom.d * atom.omega_A / math.sqrt(k.epsilon_0 * k.hbar * k.c**3)
    return AtomParams(
        omega_A=1.0, d=d, e_d=atom.e_d, M=mass, p0=p0, unit_system=UnitSystem.NATURAL,
    )


def si_unit_scale(omega_unit: float) -> UnitScale:
    """SI factors for natural units whose frequency unit is ``omega_unit`` [rad/s]."""
    omega_unit = _require_finite_positive(omega_unit, "omega_unit")
    k = SI_CONSTANTS
    energy = k.hbar * omega_unit
    return UnitScale(
        rate=omega_unit,
        momentum=energy / k.c,
        mass=energy / k.c**2,
        energy=energy,
    )


def unit_scale(atom: AtomParams) -> UnitScale:
    """Factors turning natural-unit results of ``to_natural(atom)`` back into ``atom``'s units."""
    if atom.unit_system is UnitSystem.NATURAL:
        return UnitScale()
    return si_unit_scale(atom.omega_A)


def reduce(atom: AtomParams) -> ReducedAtom:
    """Natural-unit ReducedAtom of an AtomParams scenario."""
    natural = to_natural(atom)
    small = small_params(natural)
    return ReducedAtom(
        omega_A=natural.omega_A,
        d=natural.d,
        e_d=natural.e_d,
        epsilon=small.epsilon,
        beta=small.beta,
    )


def resolve_scenario(atom: Scenario) -> tuple[ReducedAtom, UnitScale]:
    """Reduced natural-unit scenario plus the scale to convert results back."""
    if isinstance(atom, ReducedAtom):
        return atom, UnitScale()
    return reduce(atom), unit_scale(atom)
