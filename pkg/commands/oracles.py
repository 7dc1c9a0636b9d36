"""
============================================================================
oracles — Angular Integral Checks
============================================================================
The three solid-angle integrals behind the closed forms, by quadrature
and analytically, one row per component. The integrals take the natural-unit
dipole and are reported in natural units whatever output.units says.
============================================================================
"""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from commands.common import Summary, build_directions, natural_omega_and_dipole
from config.settings import RunConfig
from physics.golden_rule import angular_oracles
from physics.scales import unit_vector
from utils.export import write_csv

logger = logging.getLogger(__name__)

# velocity used when the scenario is at rest; the integrals are linear in it
DEFAULT_BETA = (0.0, 0.0, 1.0)


def run(config: RunConfig) -> Summary:
    cfg = config.scenario
    beta = np.asarray(cfg.beta, dtype=float)
    if not np.any(beta):
        beta = np.asarray(DEFAULT_BETA)
    checks = angular_oracles(
        build_directions(config),
        e_d=unit_vector(cfg.dipole_direction, "scenario.dipole_direction"),
        beta=beta,
        d=natural_omega_and_dipole(cfg)[1],
    )

    rows = []
    for check in checks:
        quad = np.atleast_1d(check.quadrature)
        exact = np.atleast_1d(check.analytic)
        for component, (q, a) in enumerate(zip(quad, exact)):
            rows.append({"name": check.name, "component": component, "quadrature": q, "analytic": a, "abs_error": abs(q - a)})
    write_csv(pd.DataFrame(rows), config.output.path)

    summary: Summary = {check.name: check.abs_error for check in checks}
    logger.info("Oracle max abs errors: %s", ", ".join(f"{k}={v:.3g}" for k, v in summary.items()))
    return summary
