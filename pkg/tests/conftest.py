"""Shared fixtures: standard natural-unit atoms and direction grids."""

import sys
from pathlib import Path

import pytest

# Ensure the package import works when the repository root is not the current directory
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from physics.modes import direction_grid  # noqa: E402
from physics.scales import AtomParams, ReducedAtom  # noqa: E402


@pytest.fixture
def static_atom():
    """epsilon = beta = 0, d = 1, omega_A = 1."""
    return ReducedAtom()


@pytest.fixture
def moving_atom():
    """epsilon = 1e-3 and p0 = (0, 0, 1), so beta = (0, 0, 1e-3)."""
    return AtomParams(omega_A=1.0, d=1.0, e_d=(1.0, 0.0, 0.0), M=1000.0, p0=(0.0, 0.0, 1.0))


@pytest.fixture(scope="session")
def fine_directions():
    return direction_grid(16, 32)


@pytest.fixture(scope="session")
def coarse_directions():
    return direction_grid(8, 16)
