"""Scenario validation, small parameters and natural-unit reduction."""

import math

import numpy as np
import pytest
import scipy.constants as SI
from hypothesis import given, settings
from hypothesis import strategies as st

from physics.errors import DomainError
from physics.scales import (
    AtomParams,
    ReducedAtom,
    UnitSystem,
    reduce,
    resolve_scenario,
    small_params,
    to_natural,
    unit_scale,
)


# ======================================================================
# small_params
# ======================================================================

def test_small_params_static_heavy_atom():
    small = small_params(AtomParams(omega_A=1.0, d=1.0, M=1000.0))
    assert small.epsilon == pytest.approx(1e-3, rel=1e-15)
    assert small.beta == (0.0, 0.0, 0.0)
    assert small.valid


def test_small_params_velocity():
    small = small_params(AtomParams(omega_A=1.0, d=1.0, M=1000.0, p0=(0.0, 0.0, 1.0)))
    np.testing.assert_allclose(small.beta, (0.0, 0.0, 1e-3), rtol=1e-15)


def test_small_params_out_of_regime_is_flagged_not_refused():
    small = small_params(AtomParams(omega_A=1.0, d=1.0, M=5.0, p0=(0.0, 0.0, 2.0)))
    assert small.epsilon == pytest.approx(0.2)
    np.testing.assert_allclose(small.beta, (0.0, 0.0, 0.4))
    assert not small.valid


def test_small_params_of_reduced_atom():
    small = small_params(ReducedAtom(epsilon=0.0, beta=(0.0, 0.0, 0.05)))
    assert small.epsilon == 0.0
    assert small.beta_norm == pytest.approx(0.05)


# ======================================================================
# Validation
# ======================================================================

@pytest.mark.parametrize(
    "kwargs",
    [
        {"omega_A": 0.0, "d": 1.0},
        {"omega_A": 1.0, "d": 0.0},
        {"omega_A": 1.0, "d": 1.0, "M": -1.0},
        {"omega_A": 1.0, "d": 1.0, "e_d": (1.0, 1.0, 0.0)},
        {"omega_A": float("nan"), "d": 1.0},
        {"omega_A": 1.0, "d": 1.0, "p0": (0.0, float("inf"), 0.0)},
    ],
)
def test_atom_params_rejects_invalid_input(kwargs):
    with pytest.raises(DomainError):
        AtomParams(**kwargs)


def test_reduced_atom_momentum_needs_finite_mass():
    assert np.all(ReducedAtom().momentum == 0.0)
    with pytest.raises(DomainError):
        _ = ReducedAtom(beta=(0.0, 0.0, 1e-3)).momentum


def test_reduced_atom_momentum_from_epsilon_and_beta():
    atom = ReducedAtom(epsilon=1e-3, beta=(0.0, 0.0, 1e-3))
    np.testing.assert_allclose(atom.momentum, (0.0, 0.0, 1.0), rtol=1e-14)


def test_reduced_atom_rejects_superluminal_beta():
    with pytest.raises(DomainError):
        ReducedAtom(beta=(0.0, 0.0, 1.0))


def test_from_small_round_trips_the_small_parameters():
    atom = AtomParams.from_small(epsilon=1e-3, beta=(0.0, 2e-4, 1e-3), e_d=(0.0, 3.0, 4.0))
    small = small_params(atom)
    assert small.epsilon == pytest.approx(1e-3, rel=1e-14)
    np.testing.assert_allclose(small.beta, (0.0, 2e-4, 1e-3), rtol=1e-14)
    np.testing.assert_allclose(atom.e_d, (0.0, 0.6, 0.8), rtol=1e-15)


# ======================================================================
# Natural units
# ======================================================================

def _si_toy(beta=(0.0, 0.0, 1e-4)) -> AtomParams:
    """hbar omega_A = 1 eV, M c^2 = 1 GeV."""
    omega = SI.e / SI.hbar
    mass = 1e9 * SI.e / SI.c**2
    p0 = tuple(b * mass * SI.c for b in beta)
    return AtomParams(omega_A=omega, d=SI.e * SI.physical_constants["Bohr radius"][0], M=mass, p0=p0, unit_system="si")


def test_to_natural_is_identity_for_natural_input(moving_atom):
    assert to_natural(moving_atom) is moving_atom


def test_to_natural_preserves_small_parameters_of_si_toy():
    atom = _si_toy()
    natural = to_natural(atom)
    before, after = small_params(atom), small_params(natural)
    assert natural.omega_A == 1.0
    assert natural.unit_system is UnitSystem.NATURAL
    assert before.epsilon == pytest.approx(1e-9, rel=1e-12)
    assert after.epsilon == pytest.approx(before.epsilon, rel=1e-14)
    np.testing.assert_allclose(after.beta, before.beta, rtol=1e-14)


@settings(max_examples=50, deadline=None)
@given(
    omega=st.floats(1e10, 1e17),
    mass=st.floats(1e-30, 1e-20),
    beta=st.tuples(*[st.floats(-0.05, 0.05)] * 3),
)
def test_rescaling_preserves_small_parameters(omega, mass, beta):
    p0 = tuple(b * mass * SI.c for b in beta)
    atom = AtomParams(omega_A=omega, d=1e-29, M=mass, p0=p0, unit_system="si")
    before, after = small_params(atom), small_params(to_natural(atom))
    assert after.epsilon == pytest.approx(before.epsilon, rel=1e-12)
    np.testing.assert_allclose(after.beta, before.beta, rtol=1e-12, atol=1e-300)


def test_unit_scale_converts_rates_and_momenta():
    atom = _si_toy()
    scale = unit_scale(atom)
    assert scale.rate == atom.omega_A
    assert scale.time == pytest.approx(1.0 / atom.omega_A)
    assert scale.momentum == pytest.approx(SI.hbar * atom.omega_A / SI.c)
    assert scale.mass == pytest.approx(SI.hbar * atom.omega_A / SI.c**2)


def test_reduce_and_resolve_agree():
    atom = _si_toy()
    reduced = reduce(atom)
    resolved, scale = resolve_scenario(atom)
    assert reduced == resolved
    assert reduced.epsilon == pytest.approx(1e-9, rel=1e-12)
    # d~ = d omega_A / sqrt(eps0 hbar c^3)
    expected_d = atom.d * atom.omega_A / math.sqrt(SI.epsilon_0 * SI.hbar * SI.c**3)
    assert reduced.d == pytest.approx(expected_d, rel=1e-14)
    assert scale.rate == atom.omega_A
