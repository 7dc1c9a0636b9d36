"""
============================================================================
pattern — Directional Emission Pattern
============================================================================
dGamma/dkappa at every direction of the grid.

Output columns:
    kx, ky, kz, weight, omega_plus, rate_density
============================================================================
"""

from __future__ import annotations

import logging

import numpy as np

from commands.common import Summary, build_directions, build_scenario, to_output_units
from config.settings import RunConfig
from physics.golden_rule import emission_pattern
from physics.scales import small_params
from utils.export import write_csv

logger = logging.getLogger(__name__)

COLUMN_UNITS = {"omega_plus": "frequency", "rate_density": "rate"}


def run(config: RunConfig) -> Summary:
    atom = build_scenario(config)
    pattern = emission_pattern(atom, build_directions(config), include_rontgen=config.scenario.include_rontgen)
    write_csv(to_output_units(pattern.to_frame(), COLUMN_UNITS, config), config.output.path)

    beta = np.asarray(small_params(atom).beta)
    forward = (pattern.kappa @ beta) > 0.0
    weighted = pattern.weights * pattern.rate_density
    summary: Summary = {
        "directions": int(pattern.kappa.shape[0]),
        "total_rate": pattern.total_rate,
        "forward_fraction": float(np.sum(weighted[forward]) / np.sum(weighted)) if np.any(beta) else 0.5,
    }
    logger.info("Emission pattern: total rate %.10g, forward fraction %.6f", summary["total_rate"], summary["forward_fraction"])
    return summary
