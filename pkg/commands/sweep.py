"""
============================================================================
sweep — (epsilon, beta) Regime Scan
============================================================================
One row per lattice point with quadrature and closed-form rate and drift
and their deviations. The scan is dimensionless and runs in natural units.
============================================================================
"""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from commands.common import (
    Summary,
    build_directions,
    natural_omega_and_dipole,
    to_output_units,
    vector_columns,
    vector_kinds,
)
from config.settings import RunConfig
from physics.golden_rule import decay_report
from physics.scales import ReducedAtom, small_params, unit_vector
from utils.export import write_csv

logger = logging.getLogger(__name__)

COLUMN_UNITS = {
    "gamma_quad": "rate",
    "gamma_closed": "rate",
    **vector_kinds("drift_quad", "momentum_rate"),
    **vector_kinds("drift_closed", "momentum_rate"),
}


def _lattice_atoms(config: RunConfig):
    cfg, opts = config.scenario, config.sweep
    e_d = unit_vector(cfg.dipole_direction, "scenario.dipole_direction")
    omega_a, dipole = natural_omega_and_dipole(cfg)
    direction = np.asarray(unit_vector(opts.beta_direction, "sweep.beta_direction"))
    for epsilon in opts.epsilons:
        for speed in opts.betas:
            yield ReducedAtom(
                omega_A=omega_a,
                d=dipole,
                e_d=e_d,
                epsilon=epsilon,
                beta=tuple(speed * direction),
            )


def run(config: RunConfig) -> Summary:
    directions = build_directions(config)
    include_rontgen = config.scenario.include_rontgen

    rows = []
    for atom in _lattice_atoms(config):
        report = decay_report(atom, directions, include_rontgen=include_rontgen)
        small = small_params(atom)
        row: Summary = {
            "epsilon": small.epsilon,
            "beta": small.beta_norm,
            "gamma_quad": report.gamma_quad,
            "gamma_closed": report.gamma_closed,
            "rel_dev_gamma": report.rel_dev_gamma,
        }
        row.update(vector_columns("drift_quad", report.drift_quad))
        row.update(vector_columns("drift_closed", report.drift_closed))
        row["rel_dev_drift"] = report.rel_dev_drift
        row["valid"] = small.valid
        rows.append(row)
        logger.debug("sweep point epsilon=%g beta=%g done", small.epsilon, small.beta_norm)

    frame = pd.DataFrame(rows)
    write_csv(to_output_units(frame, COLUMN_UNITS, config), config.output.path)
    summary: Summary = {"rows": len(rows), "max_rel_dev_gamma": float(frame["rel_dev_gamma"].max())}
    logger.info("Swept %d lattice points", len(rows))
    return summary
