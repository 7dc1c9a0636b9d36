"""
============================================================================
Golden-Rule Decay Rate & Momentum Drift
============================================================================
Decay rate and canonical-momentum drift of the moving excited atom, by
resolving the energy delta function per emission direction and summing
directions with a solid-angle quadrature:

    Gamma   =  pi/((2 pi c)^3 hbar eps0) * sum_dir w f_G(w+)/|h'(w+)|
    dP/dt   = -pi/((2 pi c)^3 c eps0)    * sum_dir w kappa f_P(w+)/|h'(w+)|

h(omega) is the detuning along a direction; w+ its single positive root.
First-order closed forms serve as independent references.

Usage:
    from physics.golden_rule import decay_report
    from physics.modes import direction_grid

    report = decay_report(atom, direction_grid(16, 32))
    report.rel_dev_gamma
============================================================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np
import pandas as pd

from physics.coupling import polarization_sum_scalar, summed_g_squared
from physics.errors import DomainError
from physics.modes import DirectionGrid, Mode, direction_grid
from physics.scales import AtomParams, ReducedAtom, Scenario, resolve_scenario, small_params
from utils.helpers import relative_deviation

logger = logging.getLogger(__name__)

Which = Literal["gamma", "pdot"]
Strategy = Literal["exact", "expanded"]

# pi / (2 pi)^3 in natural units
_PREFACTOR = math.pi / (2.0 * math.pi) ** 3

ROOT_RESIDUAL_TOLERANCE = 1e-12


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class RadialReduction:
    """
    Frequency integral along one direction, collapsed onto the root of
    the detuning.

    Attributes:
        omega_plus:        Positive root of h(omega).
        jacobian:          |h'(omega_plus)|.
        f_gamma_value:     Polarization-summed rate integrand at omega_plus (natural units).
        f_pdot_value:      omega_plus * f_gamma_value.
        omega_first_order: First-order expansion of the root, for comparison.
        residual:          h(omega_plus).
    """

    omega_plus: float
    jacobian: float
    f_gamma_value: float
    f_pdot_value: float
    omega_first_order: float
    residual: float


@dataclass(frozen=True)
class DecayReport:
    """Rate and drift from quadrature and closed form, with relative deviations."""

    gamma_quad: float
    drift_quad: tuple[float, float, float]
    gamma_closed: float
    drift_closed: tuple[float, float, float]
    rel_dev_gamma: float
    rel_dev_drift: float

    def __post_init__(self) -> None:
        values = [self.gamma_quad, self.gamma_closed, *self.drift_quad, *self.drift_closed]
        if not all(math.isfinite(v) for v in values):
            raise DomainError(f"non-finite decay report entries: {values}")
        if self.gamma_quad <= 0.0:
            raise DomainError(f"gamma_quad must be > 0, got {self.gamma_quad}")


@dataclass(frozen=True)
class OracleCheck:
    """One angular integral evaluated by quadrature and analytically."""

    name: str
    quadrature: np.ndarray
    analytic: np.ndarray

    @property
    def abs_error(self) -> float:
        return float(np.max(np.abs(np.asarray(self.quadrature) - np.asarray(self.analytic))))


@dataclass(frozen=True)
class EmissionPattern:
    """Directional decay-rate density over a direction grid."""

    kappa: np.ndarray
    weights: np.ndarray
    omega_plus: np.ndarray
    rate_density: np.ndarray

    @property
    def total_rate(self) -> float:
        return float(np.dot(self.weights, self.rate_density))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "kx": self.kappa[:, 0],
                "ky": self.kappa[:, 1],
                "kz": self.kappa[:, 2],
                "weight": self.weights,
                "omega_plus": self.omega_plus,
                "rate_density": self.rate_density,
            }
        )


# ======================================================================
# Detuning and root
# ======================================================================

def _with_momentum(atom: Scenario, p0) -> Scenario:
    if p0 is None:
        return atom
    if isinstance(atom, AtomParams):
        return replace(atom, p0=p0)
    if atom.epsilon == 0.0:
        raise DomainError("an explicit p0 needs epsilon > 0")
    return replace(atom, beta=np.asarray(p0, dtype=float) * atom.inverse_mass)


def detuning(mode: Mode, p0, atom: Scenario) -> float:
    """
    Energy mismatch between |e, p0> and |g, p0 - hbar k, 1_k>:
    omega_A - omega + k.(p0 - hbar k/2)/M, in the scenario's units.
    """
    if isinstance(atom, ReducedAtom):
        p = atom.momentum if p0 is None else np.asarray(p0, dtype=float)
        k = np.asarray(mode.kappa) * mode.omega
        return float(atom.omega_A - mode.omega + atom.inverse_mass * np.dot(k, p - 0.5 * k))
    k_const = atom.constants
    p = np.asarray(atom.p0 if p0 is None else p0, dtype=float)
    k = np.asarray(mode.kappa) * mode.omega / k_const.c
    return float(atom.omega_A - mode.omega + np.dot(k, p - 0.5 * k_const.hbar * k) / atom.M)


def _detuning_polynomial(omega, kappa_beta, atom: ReducedAtom):
    """h(omega) = omega_A - omega (1 - kappa.beta) - epsilon omega^2 / (2 omega_A)."""
    return atom.omega_A - omega * (1.0 - kappa_beta) - atom.epsilon * omega**2 / (2.0 * atom.omega_A)


def _roots(kappa: np.ndarray, atom: ReducedAtom) -> tuple[np.ndarray, np.ndarray]:
    """Positive roots and |h'| at the roots for directions of shape (n, 3)."""
    a = 1.0 - kappa @ atom.beta_vector
    if np.any(a <= 0.0):
        raise DomainError("1 - kappa.beta must be > 0 for every direction")
    jacobian = np.sqrt(a * a + 2.0 * atom.epsilon)
    # rationalized quadratic-formula root, stable as epsilon -> 0
    omega_plus = 2.0 * atom.omega_A / (a + jacobian)
    return omega_plus, jacobian


def omega_plus(kappa, p0, atom: Scenario) -> RadialReduction:
    """Root of the detuning along ``kappa`` with its Jacobian and integrand values."""
    atom = _with_momentum(atom, p0)
    reduced, scale = resolve_scenario(atom)
    kappa = np.asarray(kappa, dtype=float).reshape(1, 3)
    root, jacobian = _roots(kappa, reduced)
    if not (np.isfinite(root[0]) and root[0] > 0.0):
        raise DomainError("detuning has no positive root")
    kappa_beta = float(kappa[0] @ reduced.beta_vector)
    residual = float(_detuning_polynomial(root[0], kappa_beta, reduced))
    assert abs(residual) <= ROOT_RESIDUAL_TOLERANCE * reduced.omega_A, residual
    f_gamma = float(root[0] ** 3 * summed_g_squared(kappa, root, reduced)[0])
    first_order = reduced.omega_A * (1.0 + kappa_beta - 0.5 * reduced.epsilon)
    return RadialReduction(
        omega_plus=float(root[0]) * scale.rate,
        jacobian=float(jacobian[0]),
        f_gamma_value=f_gamma,
        f_pdot_value=float(root[0]) * f_gamma,
        omega_first_order=first_order * scale.rate,
        residual=residual * scale.rate,
    )


# ======================================================================
# Radial integrands
# ======================================================================

def radial_values(
    kappa: np.ndarray,
    atom: ReducedAtom,
    which: Which = "gamma",
    strategy: Strategy = "exact",
    include_rontgen: bool = True,
) -> np.ndarray:
    """
    Delta-reduced frequency integral along each direction (n, 3), natural units.

    ``exact`` evaluates f(w+)/|h'(w+)| at the exact root; ``expanded``
    uses the closed first-order angular expressions.
    """
    kappa = np.atleast_2d(np.asarray(kappa, dtype=float))
    if strategy == "exact":
        root, jacobian = _roots(kappa, atom)
        f_gamma = root**3 * summed_g_squared(kappa, root, atom, include_rontgen=include_rontgen)
        values = f_gamma / jacobian
        return values * root if which == "pdot" else values
    if strategy != "expanded":
        raise DomainError(f"unknown radial strategy {strategy!r}")

    e_d = np.asarray(atom.e_d)
    beta = atom.beta_vector
    kappa_beta = kappa @ beta
    transverse = polarization_sum_scalar(kappa, e_d, atom.d)
    power = 4 if which == "pdot" else 3
    # for f ~ omega^n: f + omega f' = (n+1) f and 2f + omega f' = (n+2) f
    doppler = float(power + 1)
    recoil = 0.5 * (power + 2)
    if include_rontgen:
        recoil -= 1.0
        rontgen = atom.d**2 * kappa_beta - (beta @ e_d) * atom.d**2 * (kappa @ e_d)
    else:
        rontgen = np.zeros_like(kappa_beta)
    scale = atom.omega_A**power
    return scale * (1.0 - recoil * atom.epsilon + doppler * kappa_beta) * transverse - 2.0 * scale * rontgen


def radial_integrand(
    kappa,
    p0,
    atom: Scenario,
    which: Which = "gamma",
    strategy: Strategy = "exact",
    include_rontgen: bool = True,
) -> float:
    """Delta-reduced frequency integral along a single direction (natural units)."""
    reduced, _ = resolve_scenario(_with_momentum(atom, p0))
    value = radial_values(
        np.asarray(kappa, dtype=float).reshape(1, 3), reduced, which, strategy, include_rontgen,
    )
    return float(value[0])


# ======================================================================
# Quadrature
# ======================================================================

def decay_rate_quadrature(
    atom: Scenario,
    directions: DirectionGrid,
    include_rontgen: bool = True,
    strategy: Strategy = "exact",
) -> float:
    """Golden-rule decay rate by delta resolution and solid-angle quadrature."""
    reduced, scale = resolve_scenario(atom)
    values = radial_values(directions.kappa, reduced, "gamma", strategy, include_rontgen)
    return float(_PREFACTOR * directions.integrate(values)) * scale.rate


def momentum_drift_quadrature(
    atom: Scenario,
    directions: DirectionGrid,
    include_rontgen: bool = True,
    strategy: Strategy = "exact",
) -> np.ndarray:
    """Canonical-momentum drift: photon momentum weighted by the directional emission rate."""
    reduced, scale = resolve_scenario(atom)
    values = radial_values(directions.kappa, reduced, "pdot", strategy, include_rontgen)
    drift = -_PREFACTOR * directions.integrate(directions.kappa * values[:, None])
    return np.asarray(drift) * scale.momentum * scale.rate


def emission_pattern(
    atom: Scenario,
    directions: DirectionGrid,
    include_rontgen: bool = True,
) -> EmissionPattern:
    """Directional rate density dGamma/dkappa at each grid direction."""
    reduced, scale = resolve_scenario(atom)
    root, _ = _roots(directions.kappa, reduced)
    values = radial_values(directions.kappa, reduced, "gamma", "exact", include_rontgen)
    return EmissionPattern(
        kappa=np.array(directions.kappa),
        weights=np.array(directions.weights),
        omega_plus=root * scale.rate,
        rate_density=_PREFACTOR * values * scale.rate,
    )


# ======================================================================
# Closed forms
# ======================================================================

def _static_rate(atom: ReducedAtom) -> float:
    """omega_A^3 d^2 / (3 pi) in natural units."""
    return atom.omega_A**3 * atom.d**2 / (3.0 * math.pi)


def decay_rate_closed(atom: Scenario) -> float:
    """First-order rate omega_A^3 d^2/(3 pi eps0 hbar c^3) * (1 - 3 eps/2)."""
    reduced, scale = resolve_scenario(atom)
    return _static_rate(reduced) * (1.0 - 1.5 * reduced.epsilon) * scale.rate


def momentum_drift_closed(atom: Scenario) -> np.ndarray:
    """First-order drift -Gamma_0 (hbar omega_A / M c^2) p0, with the velocity-free Gamma_0."""
    reduced, scale = resolve_scenario(atom)
    drift = -_static_rate(reduced) * reduced.omega_A * reduced.beta_vector
    return drift * scale.momentum * scale.rate


def decay_report(
    atom: Scenario,
    directions: DirectionGrid,
    include_rontgen: bool = True,
) -> DecayReport:
    """Quadrature and closed-form rate and drift side by side."""
    small = small_params(atom)
    if not small.valid:
        logger.warning(
            "Outside first-order regime (epsilon=%g, |beta|=%g); closed forms are indicative only",
            small.epsilon, small.beta_norm,
        )
    gamma_quad = decay_rate_quadrature(atom, directions, include_rontgen=include_rontgen)
    drift_quad = momentum_drift_quadrature(atom, directions, include_rontgen=include_rontgen)
    gamma_closed = decay_rate_closed(atom)
    drift_closed = momentum_drift_closed(atom)
    return DecayReport(
        gamma_quad=gamma_quad,
        drift_quad=tuple(float(x) for x in drift_quad),
        gamma_closed=gamma_closed,
        drift_closed=tuple(float(x) for x in drift_closed),
        rel_dev_gamma=relative_deviation(gamma_quad, gamma_closed),
        rel_dev_drift=relative_deviation(drift_quad, drift_closed),
    )


# ======================================================================
# Angular oracles
# ======================================================================

def angular_oracles(
    directions: DirectionGrid,
    e_d: Sequence[float],
    beta: Sequence[float],
    d: float = 1.0,
) -> list[OracleCheck]:
    """
    The three solid-angle integrals behind the first-order closed forms,
    by quadrature and in their 8 pi/3 analytic form. ``beta`` plays the
    role of p0; every integral is linear in it.
    """
    kappa = directions.kappa
    e_d = np.asarray(e_d, dtype=float)
    p = np.asarray(beta, dtype=float)
    d_vec = d * e_d
    transverse = polarization_sum_scalar(kappa, e_d, d)
    kappa_p = kappa @ p
    kappa_d = kappa @ d_vec
    p_d = float(p @ d_vec)
    eight_pi_3 = 8.0 * math.pi / 3.0

    first = directions.integrate(transverse)
    second = 5.0 * directions.integrate(kappa * (kappa_p * transverse)[:, None])
    third = 2.0 * directions.integrate(kappa * (d**2 * kappa_p - kappa_d * p_d)[:, None])

    return [
        OracleCheck("transverse", np.atleast_1d(first), np.atleast_1d(eight_pi_3 * d**2)),
        OracleCheck("doppler", np.asarray(second), eight_pi_3 * (2.0 * d**2 * p - p_d * d_vec)),
        OracleCheck("rontgen", np.asarray(third), eight_pi_3 * (d**2 * p - p_d * d_vec)),
    ]


# ======================================================================
# Convergence
# ======================================================================

def convergence_study(
    atom: Scenario,
    levels: Sequence[tuple[int, int]] = ((4, 8), (8, 16), (16, 32), (32, 64)),
    include_rontgen: bool = True,
) -> pd.DataFrame:
    """
    Quadrature rate on successively refined direction grids, with the
    change per refinement and the ratio of successive changes.
    """
    rows = []
    for n_polar, n_azimuth in levels:
        gamma = decay_rate_quadrature(atom, direction_grid(n_polar, n_azimuth), include_rontgen)
        rows.append({"n_polar": n_polar, "n_azimuth": n_azimuth, "gamma": gamma})
    frame = pd.DataFrame(rows)
    frame["delta"] = frame["gamma"].diff().abs()
    frame["ratio"] = frame["delta"].shift(1) / frame["delta"]
    return frame
