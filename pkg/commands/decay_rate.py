"""
============================================================================
decay-rate — Golden-Rule Decay Rate
============================================================================
Delta-resolved quadrature rate next to the first-order closed form.

Output columns:
    epsilon, beta, gamma_quad, gamma_closed, rel_dev, valid
============================================================================
"""

from __future__ import annotations

import logging

from commands.common import Summary, build_directions, build_scenario, to_output_units
from config.settings import RunConfig
from physics.golden_rule import decay_report
from physics.scales import small_params
from utils.export import summary_frame, write_csv
from utils.helpers import format_percentage

logger = logging.getLogger(__name__)

COLUMN_UNITS = {"gamma_quad": "rate", "gamma_closed": "rate"}


def run(config: RunConfig) -> Summary:
    atom = build_scenario(config)
    directions = build_directions(config)
    report = decay_report(atom, directions, include_rontgen=config.scenario.include_rontgen)
    small = small_params(atom)

    summary: Summary = {
        "epsilon": small.epsilon,
        "beta": small.beta_norm,
        "gamma_quad": report.gamma_quad,
        "gamma_closed": report.gamma_closed,
        "rel_dev": report.rel_dev_gamma,
        "valid": small.valid,
    }
    write_csv(to_output_units(summary_frame(summary), COLUMN_UNITS, config), config.output.path)
    logger.info(
        "Gamma quadrature %.10g vs closed form %.10g (rel. dev. %s)",
        report.gamma_quad, report.gamma_closed, format_percentage(report.rel_dev_gamma),
    )
    return summary
