"""
============================================================================
Mass Defect & Two-Way Emitter Audit
============================================================================
Energy-momentum bookkeeping of an emitter that loses internal energy while
its velocity stays fixed:

    dM/dt = -Gamma hbar omega_A / c^2

and the two-way emitter that sends equal rest-frame photons left and right,
seen from a frame in which it moves with velocity v. Its momentum change
is dE v / c^2: a mass change at constant velocity, not a force.

Velocities are carried as beta = v/c.

Usage:
    from physics.relativity import emitter_scenario, balance

    scenario = emitter_scenario(omega_0=1.0, beta=0.1)
    dE, dp = balance(scenario)
============================================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from physics.errors import DomainError
from physics.golden_rule import _static_rate, momentum_drift_closed
from physics.scales import (
    PhysicalConstants,
    Scenario,
    UnitSystem,
    constants_for,
    resolve_scenario,
    small_params,
)
from utils.helpers import relative_deviation

GAMMA_TOLERANCE = 1e-14


# ======================================================================
# Lorentz factor
# ======================================================================

def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or abs(beta) >= 1.0:
        raise DomainError(f"|v|/c must be < 1, got {beta!r}")
    return beta


def lorentz_gamma_minus_one(beta: float) -> float:
    """gamma - 1 = expm1(-log1p(-beta^2)/2), accurate down to beta ~ 1e-8."""
    beta = _check_beta(beta)
    return math.expm1(-0.5 * math.log1p(-beta * beta))


def lorentz_gamma(beta: float) -> float:
    return 1.0 + lorentz_gamma_minus_one(beta)


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class EmitterScenario:
    """
    Two-way emitter seen from the lab frame.

    Attributes:
        omega_0:     Rest-frame photon angular frequency.
        beta:        Signed lab velocity along the emission axis, in units of c.
        gamma:       Lorentz factor.
        omega_l:     Frequency of the photon emitted against the motion.
        omega_r:     Frequency of the photon emitted along the motion.
        dE:          Energy change of the emitter.
        dp:          Momentum change of the emitter.
        unit_system: Units of dE and dp.
    """

    omega_0: float
    beta: float
    gamma: float
    omega_l: float
    omega_r: float
    dE: float
    dp: float
    unit_system: UnitSystem = UnitSystem.NATURAL

    def __post_init__(self) -> None:
        _check_beta(self.beta)
        expected = lorentz_gamma(self.beta)
        if abs(self.gamma - expected) > GAMMA_TOLERANCE * expected:
            raise DomainError(f"gamma {self.gamma!r} inconsistent with beta {self.beta!r}")
        if self.omega_l <= 0.0 or self.omega_r <= 0.0:
            raise DomainError("Doppler frequencies must be > 0")

    @property
    def constants(self) -> PhysicalConstants:
        return constants_for(self.unit_system)

    @property
    def v(self) -> float:
        return self.beta * self.constants.c

    @property
    def rest_mass_change(self) -> float:
        """dE / (gamma c^2): the invariant mass lost by the emitter."""
        return self.dE / (self.gamma * self.constants.c**2)


@dataclass(frozen=True)
class FrictionReport:
    """Golden-rule drift next to the mass-defect prediction dM/dt * v0."""

    drift_closed: tuple[float, float, float]
    mass_defect_drift: tuple[float, float, float]
    mass_rate: float
    deviation: float


# ======================================================================
# Operations
# ======================================================================

def doppler_pair(omega_0: float, beta: float) -> tuple[float, float]:
    """
    Lab frequencies (omega_l, omega_r) = omega_0 gamma (1 -+ beta), in the
    square-root form whose product is omega_0^2 to rounding.
    """
    beta = _check_beta(beta)
    if omega_0 <= 0.0 or not math.isfinite(omega_0):
        raise DomainError(f"omega_0 must be finite and > 0, got {omega_0!r}")
    ratio = math.sqrt((1.0 - beta) / (1.0 + beta))
    return omega_0 * ratio, omega_0 / ratio


def emitter_scenario(
    omega_0: float,
    beta: float,
    unit_system: UnitSystem | str = UnitSystem.NATURAL,
) -> EmitterScenario:
    """Build the emitter with its Doppler pair and energy/momentum deltas."""
    unit_system = UnitSystem(unit_system)
    omega_l, omega_r = doppler_pair(omega_0, beta)
    gamma = lorentz_gamma(beta)
    dE, dp = _closed_balance(omega_0, beta, gamma, constants_for(unit_system))
    return EmitterScenario(
        omega_0=float(omega_0),
        beta=float(beta),
        gamma=gamma,
        omega_l=omega_l,
        omega_r=omega_r,
        dE=dE,
        dp=dp,
        unit_system=unit_system,
    )


def _closed_balance(omega_0: float, beta: float, gamma: float, k: PhysicalConstants) -> tuple[float, float]:
    dE = -2.0 * k.hbar * omega_0 * gamma
    # dE * v / c^2 with v = beta c; exactly 0 at rest
    dp = dE * beta / k.c if beta != 0.0 else 0.0
    return dE, dp


def balance(scenario: EmitterScenario) -> tuple[float, float]:
    """
    Energy and momentum change of the emitter,
    dE = -hbar (omega_l + omega_r), dp = -hbar (omega_r - omega_l) / c,
    evaluated in the closed forms -2 hbar omega_0 gamma and dE v / c^2.
    """
    return _closed_balance(scenario.omega_0, scenario.beta, scenario.gamma, scenario.constants)


def photon_balance(scenario: EmitterScenario) -> tuple[float, float]:
    """The same deltas summed from the two Doppler-shifted photons."""
    k = scenario.constants
    dE = -k.hbar * (scenario.omega_l + scenario.omega_r)
    dp = -k.hbar * (scenario.omega_r - scenario.omega_l) / k.c
    return dE, dp


def mass_rate(gamma_decay: float, omega_A: float, unit_system: UnitSystem | str = UnitSystem.NATURAL) -> float:
    """dM/dt = -Gamma hbar omega_A / c^2."""
    if gamma_decay < 0.0 or omega_A <= 0.0:
        raise DomainError(f"need Gamma >= 0 and omega_A > 0, got {gamma_decay!r}, {omega_A!r}")
    k = constants_for(unit_system)
    return -gamma_decay * k.hbar * omega_A / k.c**2


def internal_energy_rate(gamma_decay: float, omega_A: float, unit_system: UnitSystem | str = UnitSystem.NATURAL) -> float:
    """d<H_A>/dt = -Gamma hbar omega_A."""
    if gamma_decay < 0.0 or omega_A <= 0.0:
        raise DomainError(f"need Gamma >= 0 and omega_A > 0, got {gamma_decay!r}, {omega_A!r}")
    return -gamma_decay * constants_for(unit_system).hbar * omega_A


def friction_consistency(atom: Scenario) -> FrictionReport:
    """
    Compare the closed-form golden-rule drift with dM/dt * v0, v0 = p0/M,
    both at first order with the velocity-free rate.
    """
    reduced, scale = resolve_scenario(atom)
    small = small_params(atom)
    drift = momentum_drift_closed(atom)
    # natural units: dM/dt = -Gamma_0 omega_A, v0 = beta
    rate_natural = mass_rate(_static_rate(reduced), reduced.omega_A)
    mass_defect = rate_natural * np.asarray(small.beta) * scale.momentum * scale.rate
    return FrictionReport(
        drift_closed=tuple(float(x) for x in drift),
        mass_defect_drift=tuple(float(x) for x in mass_defect),
        mass_rate=rate_natural * scale.mass * scale.rate,
        deviation=relative_deviation(drift, mass_defect),
    )
