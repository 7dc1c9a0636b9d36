"""
============================================================================
Atom-Field Coupling
============================================================================
Interaction scalars and vectors of the dipole + Roentgen Hamiltonian in the
rotating-wave approximation:

    g   = eps.e_d + (p - hbar k/2).((kappa x eps) x e_d) / (M c)
    b   = (kappa x eps) x e_d
    Om2 = d^2 omega^3 w_dir w_om / (2 (2 pi c)^3 hbar eps0)

plus the polarization-summed identities used by the golden-rule reduction.
Single-mode functions follow the caller's unit system; the ``*_array``
variants are the vectorized natural-unit kernels the engines call.

Setting ``include_rontgen=False`` drops the Roentgen part of g, leaving
the familiar static-dipole coupling eps.e_d.
============================================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from physics.modes import Mode
from physics.scales import AtomParams, ReducedAtom, Scenario, constants_for


@dataclass(frozen=True)
class CouplingFactors:
    """
    Coupling of one mode at a given atomic momentum.

    Attributes:
        g:                    Roentgen-corrected coupling eigenvalue.
        b_vec:                (kappa x eps) x e_d.
        omega_rabi_sq_weight: Squared coupling with the continuum measure absorbed.
    """

    g: float
    b_vec: tuple[float, float, float]
    omega_rabi_sq_weight: float


# ======================================================================
# Scenario helpers
# ======================================================================

def _recoil_factors(atom: Scenario) -> tuple[float, float]:
    """Return (1/(M c), hbar/c) in the scenario's unit system."""
    if isinstance(atom, ReducedAtom):
        return atom.inverse_mass, 1.0
    k = atom.constants
    return 1.0 / (atom.M * k.c), k.hbar / k.c


def _constants(atom: Scenario):
    if isinstance(atom, ReducedAtom):
        return constants_for("natural")
    return atom.constants


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


# ======================================================================
# Single-mode operations
# ======================================================================

def b_vector(mode: Mode, e_d: np.ndarray | tuple[float, float, float]) -> np.ndarray:
    """Triple cross product (kappa x eps) x e_d."""
    return np.cross(np.cross(mode.kappa, mode.eps_vec), np.asarray(e_d, dtype=float))


def _shifted_momentum(mode: Mode, p: np.ndarray, atom: Scenario) -> np.ndarray:
    """(p - hbar k/2)/(M c) with k = kappa omega / c."""
    inv_mc, hbar_over_c = _recoil_factors(atom)
    return inv_mc * (np.asarray(p, dtype=float) - 0.5 * hbar_over_c * mode.k_vector)


def coupling_g(
    mode: Mode,
    p: np.ndarray | tuple[float, float, float],
    atom: Scenario,
    include_rontgen: bool = True,
) -> float:
    """Eigenvalue of the momentum-dependent coupling at canonical momentum p, unexpanded."""
    e_d = np.asarray(atom.e_d)
    static = float(np.dot(mode.eps_vec, e_d))
    if not include_rontgen:
        return static
    return static + float(np.dot(_shifted_momentum(mode, p, atom), b_vector(mode, e_d)))


def g_squared_expanded(
    mode: Mode,
    p0: np.ndarray | tuple[float, float, float],
    atom: Scenario,
    include_rontgen: bool = True,
) -> float:
    """g^2 truncated at first order in 1/(M c)."""
    e_d = np.asarray(atom.e_d)
    static = float(np.dot(mode.eps_vec, e_d))
    if not include_rontgen:
        return static**2
    shifted = _shifted_momentum(mode, p0, atom)
    return static**2 + 2.0 * static * float(np.dot(shifted, b_vector(mode, e_d)))


def polarization_sum_scalar(kappa: np.ndarray, e_d: np.ndarray, d: float) -> np.ndarray | float:
    """Sum over both polarizations of (d.eps)^2, i.e. d^2 - (d.kappa)^2."""
    d_kappa = d * _dot(e_d, kappa)
    return d**2 - d_kappa**2


def polarization_sum_vector(
    kappa: np.ndarray,
    e_d: np.ndarray,
    d: float,
    a: np.ndarray,
) -> np.ndarray | float:
    """Sum over both polarizations of (d.eps) a.((kappa x eps) x d) = (d.kappa)(a.d) - d^2 (a.kappa)."""
    d_vec = d * np.asarray(e_d, dtype=float)
    return _dot(d_vec, kappa) * _dot(a, d_vec) - d**2 * _dot(a, kappa)


def mode_coupling_weight(
    mode: Mode,
    grid_weights: tuple[float, float],
    atom: Scenario,
) -> float:
    """Squared coupling of one discrete mode, with its (w_dir, w_om) measure absorbed."""
    w_dir, w_om = grid_weights
    return float(coupling_weights(mode.omega, w_dir, w_om, atom.d, _constants(atom)))


def coupling_factors(
    mode: Mode,
    p: np.ndarray | tuple[float, float, float],
    atom: Scenario,
    grid_weights: tuple[float, float],
    include_rontgen: bool = True,
) -> CouplingFactors:
    """Bundle g, b and the squared coupling weight of one mode."""
    return CouplingFactors(
        g=coupling_g(mode, p, atom, include_rontgen=include_rontgen),
        b_vec=tuple(float(x) for x in b_vector(mode, atom.e_d)),
        omega_rabi_sq_weight=mode_coupling_weight(mode, grid_weights, atom),
    )


# ======================================================================
# Vectorized kernels (natural units)
# ======================================================================

def measure_prefactor(d: float, constants=None) -> float:
    """d^2 / (2 (2 pi c)^3 hbar eps0): continuum limit of the sum over modes of Omega_k^2."""
    k = constants or constants_for("natural")
    return d**2 / (2.0 * (2.0 * math.pi * k.c) ** 3 * k.hbar * k.epsilon_0)


def coupling_weights(omega, w_dir, w_om, d: float, constants=None) -> np.ndarray:
    """Vectorized squared coupling weights for arrays of modes."""
    omega = np.asarray(omega, dtype=float)
    return measure_prefactor(d, constants) * omega**3 * np.asarray(w_dir) * np.asarray(w_om)


def b_vector_array(kappa: np.ndarray, eps: np.ndarray, e_d: np.ndarray) -> np.ndarray:
    """(kappa x eps) x e_d for arrays of shape (N, 3)."""
    return np.cross(np.cross(kappa, eps), np.asarray(e_d, dtype=float)[None, :])


def shifted_velocity_array(kappa: np.ndarray, omega: np.ndarray, atom: ReducedAtom) -> np.ndarray:
    """(p0 - k/2)/M = beta - (epsilon omega / (2 omega_A)) kappa, shape (N, 3)."""
    recoil = 0.5 * atom.inverse_mass * np.asarray(omega, dtype=float)
    return atom.beta_vector[None, :] - recoil[..., None] * kappa


def g_array(
    kappa: np.ndarray,
    eps: np.ndarray,
    omega: np.ndarray,
    atom: ReducedAtom,
    include_rontgen: bool = True,
) -> np.ndarray:
    """Unexpanded g at p0 for arrays of modes."""
    static = _dot(eps, np.asarray(atom.e_d))
    if not include_rontgen:
        return static
    b = b_vector_array(kappa, eps, np.asarray(atom.e_d))
    return static + _dot(shifted_velocity_array(kappa, omega, atom), b)


def summed_g_squared(
    kappa: np.ndarray,
    omega: np.ndarray | float,
    atom: ReducedAtom,
    include_rontgen: bool = True,
) -> np.ndarray:
    """
    Polarization sum of d^2 g^2 to first order in 1/(M c) for directions (n, 3):

        (d^2 - (d.kappa)^2) + (d.kappa)(a.d) - d^2 (a.kappa),
        a = 2 (p0 - omega kappa / 2) / M
    """
    e_d = np.asarray(atom.e_d)
    scalar = polarization_sum_scalar(kappa, e_d, atom.d)
    if not include_rontgen:
        return scalar
    a = 2.0 * shifted_velocity_array(kappa, np.broadcast_to(omega, kappa.shape[:1]), atom)
    return scalar + polarization_sum_vector(kappa, e_d, atom.d, a)
