"""Doppler pair, emitter energy-momentum balance and the mass-defect reading of the drift."""

import math

import numpy as np
import pytest
import scipy.constants as SI
from hypothesis import given, settings
from hypothesis import strategies as st

from physics.errors import DomainError
from physics.relativity import (
    EmitterScenario,
    balance,
    doppler_pair,
    emitter_scenario,
    friction_consistency,
    internal_energy_rate,
    lorentz_gamma,
    lorentz_gamma_minus_one,
    mass_rate,
    photon_balance,
)
from physics.scales import AtomParams

AUDIT_VELOCITIES = (1e-6, 0.01, 0.1, 0.5)


# ======================================================================
# Lorentz factor and Doppler pair
# ======================================================================

def test_lorentz_gamma_values():
    assert lorentz_gamma(0.0) == 1.0
    assert lorentz_gamma(0.6) == pytest.approx(1.25, rel=1e-14)
    assert lorentz_gamma(-0.6) == lorentz_gamma(0.6)
    # gamma - 1 ~ beta^2 / 2 without cancellation
    assert lorentz_gamma_minus_one(1e-8) == pytest.approx(5e-17, rel=1e-8)


@pytest.mark.parametrize("beta", [1.0, -1.0, 1.5, float("nan")])
def test_superluminal_velocities_are_rejected(beta):
    with pytest.raises(DomainError):
        lorentz_gamma(beta)
    with pytest.raises(DomainError):
        emitter_scenario(1.0, beta)


def test_doppler_pair_at_a_tenth_of_c():
    omega_l, omega_r = doppler_pair(1.0, 0.1)
    assert omega_l == pytest.approx(0.90453404, abs=1e-8)
    assert omega_r == pytest.approx(1.10554160, abs=1e-8)


def test_doppler_pair_at_rest_is_unshifted():
    assert doppler_pair(2.5, 0.0) == (2.5, 2.5)


@settings(max_examples=200, deadline=None)
@given(beta=st.floats(-0.99, 0.99))
def test_doppler_product_identity(beta):
    omega_l, omega_r = doppler_pair(1.0, beta)
    assert abs(omega_l * omega_r - 1.0) <= 1e-14
    assert omega_l > 0.0 and omega_r > 0.0


def test_doppler_pair_rejects_bad_frequency():
    with pytest.raises(DomainError):
        doppler_pair(0.0, 0.1)


# ======================================================================
# Emitter balance
# ======================================================================

def test_balance_at_rest():
    dE, dp = balance(emitter_scenario(1.0, 0.0))
    assert dE == -2.0
    assert dp == 0.0 and math.copysign(1.0, dp) == 1.0


def test_balance_at_a_tenth_of_c():
    dE, dp = balance(emitter_scenario(1.0, 0.1))
    assert dE == pytest.approx(-2.01007563, abs=1e-8)
    assert dp == pytest.approx(-0.20100756, abs=1e-8)


@pytest.mark.parametrize("beta", AUDIT_VELOCITIES)
def test_momentum_change_is_energy_change_times_velocity(beta):
    scenario = emitter_scenario(1.0, beta)
    dE, dp = balance(scenario)
    assert abs(dp - dE * beta) <= 1e-15 * abs(dE)


@pytest.mark.parametrize("beta", AUDIT_VELOCITIES)
def test_photon_sums_agree_with_closed_balance(beta):
    scenario = emitter_scenario(1.0, beta)
    dE, dp = balance(scenario)
    photon_dE, photon_dp = photon_balance(scenario)
    assert photon_dE == pytest.approx(dE, rel=1e-14)
    # omega_r - omega_l cancels at small beta
    assert photon_dp == pytest.approx(dp, rel=1e-9)


@pytest.mark.parametrize("beta", [1e-6, 1e-3, 0.01, 0.1])
def test_first_order_momentum_change(beta):
    _, dp = balance(emitter_scenario(1.0, beta))
    assert abs(dp + 2.0 * beta) <= 3.0 * beta**2


def test_si_emitter_uses_si_constants():
    omega = SI.e / SI.hbar
    scenario = emitter_scenario(omega, 0.01, unit_system="si")
    dE, dp = balance(scenario)
    assert dE == pytest.approx(-2.0 * SI.e * lorentz_gamma(0.01), rel=1e-14)
    assert dp == pytest.approx(dE * scenario.v / SI.c**2, rel=1e-14)
    assert scenario.rest_mass_change == pytest.approx(-2.0 * SI.e / SI.c**2, rel=1e-14)


def test_emitter_scenario_rejects_inconsistent_gamma():
    with pytest.raises(DomainError):
        EmitterScenario(omega_0=1.0, beta=0.1, gamma=1.0, omega_l=0.9, omega_r=1.1, dE=-2.0, dp=-0.2)


# ======================================================================
# Mass defect
# ======================================================================

def test_mass_rate_values():
    assert mass_rate(0.0, 1.0) == 0.0
    assert mass_rate(1.0 / (3.0 * math.pi), 1.0) == pytest.approx(-0.10610330, abs=1e-8)
    expected = -1e8 * SI.e / SI.c**2
    assert mass_rate(1e8, SI.e / SI.hbar, unit_system="si") == pytest.approx(expected, rel=1e-14)


def test_internal_energy_rate():
    assert internal_energy_rate(0.1, 2.0) == pytest.approx(-0.2)
    assert internal_energy_rate(1e8, SI.e / SI.hbar, unit_system="si") == pytest.approx(-1e8 * SI.e, rel=1e-14)
    with pytest.raises(DomainError):
        internal_energy_rate(-1.0, 1.0)


def test_friction_consistency_example(moving_atom):
    report = friction_consistency(moving_atom)
    np.testing.assert_allclose(report.drift_closed, (0.0, 0.0, -1.0610e-4), rtol=1e-4)
    np.testing.assert_allclose(report.mass_defect_drift, report.drift_closed, rtol=1e-12)
    assert report.deviation <= 1e-12
    assert report.mass_rate == pytest.approx(-1.0 / (3.0 * math.pi), rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(
    epsilon=st.floats(1e-6, 0.05),
    beta=st.tuples(*[st.floats(-0.05, 0.05)] * 3),
    omega=st.floats(0.5, 2.0),
)
def test_friction_consistency_holds_for_atoms_in_regime(epsilon, beta, omega):
    atom = AtomParams.from_small(epsilon=epsilon, beta=beta, omega_A=omega, e_d=(0.0, 0.6, 0.8))
    assert friction_consistency(atom).deviation <= 1e-12


def test_friction_consistency_in_si_units():
    omega = SI.e / SI.hbar
    mass = 1e9 * SI.e / SI.c**2
    atom = AtomParams(omega_A=omega, d=1e-29, M=mass, p0=(0.0, 0.0, 1e-4 * mass * SI.c), unit_system="si")
    report = friction_consistency(atom)
    assert report.deviation <= 1e-12
    assert report.drift_closed[2] < 0.0
