"""
============================================================================
drift — Canonical-Momentum Drift
============================================================================
Quadrature and closed-form d<P>/dt, with the mass-defect cross-check
dM/dt * v0.
============================================================================
"""

from __future__ import annotations

import logging

from commands.common import (
    Summary,
    build_directions,
    build_scenario,
    to_output_units,
    vector_columns,
    vector_kinds,
)
from config.settings import RunConfig
from physics.golden_rule import decay_report
from physics.relativity import friction_consistency
from physics.scales import small_params
from utils.export import summary_frame, write_csv
from utils.helpers import format_percentage, format_vector

logger = logging.getLogger(__name__)

COLUMN_UNITS = {
    **vector_kinds("drift_quad", "momentum_rate"),
    **vector_kinds("drift_closed", "momentum_rate"),
    **vector_kinds("mass_defect_drift", "momentum_rate"),
    "mass_rate": "mass_rate",
}


def run(config: RunConfig) -> Summary:
    atom = build_scenario(config)
    report = decay_report(atom, build_directions(config), include_rontgen=config.scenario.include_rontgen)
    friction = friction_consistency(atom)
    small = small_params(atom)

    summary: Summary = {"epsilon": small.epsilon, "beta": small.beta_norm}
    summary.update(vector_columns("drift_quad", report.drift_quad))
    summary.update(vector_columns("drift_closed", report.drift_closed))
    summary["rel_dev"] = report.rel_dev_drift
    summary.update(vector_columns("mass_defect_drift", friction.mass_defect_drift))
    summary["mass_rate"] = friction.mass_rate
    summary["friction_deviation"] = friction.deviation
    summary["valid"] = small.valid

    write_csv(to_output_units(summary_frame(summary), COLUMN_UNITS, config), config.output.path)
    logger.info(
        "Drift %s vs closed form %s (rel. dev. %s); mass-defect deviation %.3g",
        format_vector(report.drift_quad), format_vector(report.drift_closed),
        format_percentage(report.rel_dev_drift), friction.deviation,
    )
    return summary
