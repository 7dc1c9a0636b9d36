"""
============================================================================
emitter — Two-Way Emitter Audit
============================================================================
Doppler pair and energy/momentum deltas for each configured velocity,
with the residual dp - dE v / c^2.
============================================================================
"""

from __future__ import annotations

import logging

import pandas as pd

from commands.common import Summary, frequency_unit_si, to_output_units
from config.settings import RunConfig
from physics.relativity import balance, emitter_scenario, photon_balance
from utils.export import write_csv

logger = logging.getLogger(__name__)

COLUMN_UNITS = {
    "omega_l": "frequency",
    "omega_r": "frequency",
    "dE": "energy",
    "dp": "momentum",
    "residual": "momentum",
    "photon_dE": "energy",
    "photon_dp": "momentum",
}


def run(config: RunConfig) -> Summary:
    opts = config.emitter
    # emitter.omega_0 is in rad/s for SI scenarios
    omega_0 = opts.omega_0
    if config.scenario.unit_system == "si":
        omega_0 = opts.omega_0 / frequency_unit_si(config)
    rows = []
    for beta in opts.velocities:
        scenario = emitter_scenario(omega_0, beta)
        dE, dp = balance(scenario)
        photon_dE, photon_dp = photon_balance(scenario)
        rows.append(
            {
                "beta": scenario.beta,
                "gamma": scenario.gamma,
                "omega_l": scenario.omega_l,
                "omega_r": scenario.omega_r,
                "dE": dE,
                "dp": dp,
                "residual": dp - dE * scenario.v / scenario.constants.c**2,
                "photon_dE": photon_dE,
                "photon_dp": photon_dp,
            }
        )
    frame = pd.DataFrame(rows)
    write_csv(to_output_units(frame, COLUMN_UNITS, config), config.output.path)
    summary: Summary = {"rows": len(rows), "max_residual": float(frame["residual"].abs().max())}
    logger.info("Emitter audit over %d velocities; max residual %.3g", len(rows), summary["max_residual"])
    return summary
