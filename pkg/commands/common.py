"""
============================================================================
Shared Command Plumbing
============================================================================
Turns a RunConfig into engine inputs (the scenario and the direction grid)
and converts natural-unit results to the requested output units.

Commands always compute in natural units (hbar = c = eps0 = 1). An SI
scenario is rescaled on the way in, with omega_A as the frequency unit.
With ``output.units = si`` results are rescaled on the way out, using
omega_A of an SI scenario or ``output.omega_unit_si`` otherwise.
============================================================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Any, Mapping

import numpy as np
import pandas as pd

from config.settings import RunConfig, ScenarioConfig
from physics.errors import DomainError
from physics.modes import DirectionGrid, direction_grid
from physics.scales import (
    SI_CONSTANTS,
    AtomParams,
    ReducedAtom,
    Scenario,
    UnitScale,
    UnitSystem,
    si_unit_scale,
    small_params,
    to_natural,
    unit_vector,
)

logger = logging.getLogger(__name__)

Summary = dict[str, Any]

# Physical dimension of an output column, as a factor of the UnitScale.
UNIT_FACTORS = {
    "rate": lambda s: s.rate,
    "frequency": lambda s: s.rate,
    "time": lambda s: s.time,
    "energy": lambda s: s.energy,
    "momentum": lambda s: s.momentum,
    "momentum_rate": lambda s: s.momentum * s.rate,
    "mass_rate": lambda s: s.mass * s.rate,
}


# ======================================================================
# Scenario
# ======================================================================

def _is_si(cfg: ScenarioConfig) -> bool:
    return cfg.unit_system == UnitSystem.SI.value


def _si_scenario(cfg: ScenarioConfig, e_d) -> AtomParams:
    k = SI_CONSTANTS
    if cfg.mass is not None:
        mass = cfg.mass
    elif cfg.epsilon > 0.0:
        mass = k.hbar * cfg.omega_a / (cfg.epsilon * k.c**2)
    else:
        raise DomainError("an SI scenario needs scenario.mass or scenario.epsilon > 0")
    if cfg.momentum is not None:
        p0 = cfg.momentum
    else:
        p0 = tuple(float(b) * mass * k.c for b in cfg.beta)
    return AtomParams(
        omega_A=cfg.omega_a, d=cfg.dipole, e_d=e_d, M=mass, p0=p0, unit_system=UnitSystem.SI,
    )


def natural_omega_and_dipole(cfg: ScenarioConfig) -> tuple[float, float]:
    """(omega_A, d) of the scenario in natural units."""
    if not _is_si(cfg):
        return cfg.omega_a, cfg.dipole
    k = SI_CONSTANTS
    return 1.0, cfg.dipole * cfg.omega_a / math.sqrt(k.epsilon_0 * k.hbar * k.c**3)


def build_scenario(config: RunConfig) -> Scenario:
    """
    Natural-unit scenario from the config: AtomParams when epsilon and the
    dipole are positive, otherwise a ReducedAtom. SI scenarios are rescaled
    with to_natural.
    """
    cfg = config.scenario
    e_d = unit_vector(cfg.dipole_direction, "scenario.dipole_direction")
    if _is_si(cfg):
        atom: Scenario = to_natural(_si_scenario(cfg, e_d))
    elif cfg.epsilon > 0.0 and cfg.dipole > 0.0:
        atom = AtomParams.from_small(
            epsilon=cfg.epsilon, beta=cfg.beta, omega_A=cfg.omega_a, d=cfg.dipole, e_d=e_d,
        )
    else:
        atom = ReducedAtom(omega_A=cfg.omega_a, d=cfg.dipole, e_d=e_d, epsilon=cfg.epsilon, beta=cfg.beta)

    small = small_params(atom)
    if not small.valid:
        logger.warning(
            "Scenario outside the first-order regime (epsilon=%g, |beta|=%g)",
            small.epsilon, small.beta_norm,
        )
    logger.debug("Scenario: %r", atom)
    return atom


def with_dipole(atom: Scenario, dipole_natural: float) -> Scenario:
    """Same natural-unit scenario with the dipole set to ``dipole_natural``."""
    return replace(atom, d=dipole_natural)


def build_directions(config: RunConfig) -> DirectionGrid:
    return direction_grid(config.grid.n_polar, config.grid.n_azimuth)


# ======================================================================
# Output units
# ======================================================================

def frequency_unit_si(config: RunConfig) -> float:
    """SI angular frequency [rad/s] of one natural frequency unit."""
    if _is_si(config.scenario):
        return config.scenario.omega_a
    return config.output.omega_unit_si


def output_scale(config: RunConfig) -> UnitScale:
    """Factors from natural-unit results to the requested output units."""
    if config.output.units == UnitSystem.SI.value:
        return si_unit_scale(frequency_unit_si(config))
    return UnitScale()


def vector_kinds(prefix: str, kind: str) -> dict[str, str]:
    return {f"{prefix}_{axis}": kind for axis in "xyz"}


def to_output_units(frame: pd.DataFrame, kinds: Mapping[str, str], config: RunConfig) -> pd.DataFrame:
    """
    Rescale the dimensioned columns of ``frame`` to the output units.

    Args:
        frame: natural-unit results
        kinds: column name -> key of UNIT_FACTORS; unlisted columns are dimensionless
        config: run configuration holding the output units
    """
    if config.output.units == UnitSystem.NATURAL.value:
        return frame
    scale = output_scale(config)
    converted = frame.copy()
    for column, kind in kinds.items():
        converted[column] = converted[column] * UNIT_FACTORS[kind](scale)
    return converted


def vector_columns(prefix: str, values) -> Summary:
    """{'<prefix>_x': .., '<prefix>_y': .., '<prefix>_z': ..}."""
    x, y, z = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
    return {f"{prefix}_x": x, f"{prefix}_y": y, f"{prefix}_z": z}
