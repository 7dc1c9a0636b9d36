"""
============================================================================
Vacuum Friction — Main Entry Point
============================================================================
Decay rate, momentum drift and time-domain dynamics of a moving excited
two-level atom with the Roentgen interaction, plus the relativistic
mass-defect audit.

Run with:
    python app.py decay-rate
    python app.py drift --epsilon 1e-3 --beta 0 0 1e-3
    python app.py evolve --config configs/friction.cfg --out out/trajectory.csv

Exit status: 0 success, 2 configuration error, 3 numerical failure.
============================================================================
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Optional, Sequence

import numpy as np

from commands import COMMAND_MAP
from config.loader import ConfigError, load_run_config
from config.settings import get_settings
from physics.errors import DomainError, FitWindowError, SimulationError
from utils.log import setup_logging

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMAND_HELP = {
    "decay-rate": "golden-rule decay rate: quadrature vs closed form",
    "drift":      "canonical-momentum drift and mass-defect cross-check",
    "evolve":     "time-domain mode-bath trajectory",
    "oracles":    "angular integral checks",
    "emitter":    "two-way emitter Doppler and energy-momentum audit",
    "sweep":      "(epsilon, beta) lattice scan",
    "pattern":    "directional emission pattern",
}


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", metavar="PATH", help="key-value run configuration file")
    parent.add_argument("--out", metavar="PATH", help="CSV destination ('-' for stdout)")
    parent.add_argument("--grid-polar", type=int, metavar="N", help="direction nodes in cos(theta)")
    parent.add_argument("--grid-azimuth", type=int, metavar="N", help="direction nodes in phi")
    parent.add_argument("--epsilon", type=float, metavar="X", help="recoil parameter hbar omega_A/(M c^2)")
    parent.add_argument("--beta", type=float, nargs=3, metavar=("X", "Y", "Z"), help="velocity p0/(M c)")
    parent.add_argument("--dipole", type=float, nargs=3, metavar=("X", "Y", "Z"), help="dipole vector")
    parent.add_argument("--si", action="store_true", help="report results in SI units")
    parent.add_argument("--no-rontgen", action="store_true", help="drop the Roentgen coupling")
    parent.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging")
    return parent


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="friction",
        description=f"{settings.app_name} {settings.app_version}",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    parent = _common_flags()
    for name in COMMAND_MAP:
        sub.add_parser(name, parents=[parent], help=COMMAND_HELP[name])
    return parser


def overrides_from_args(args: argparse.Namespace) -> dict[str, dict[str, Any]]:
    """Map command-line flags onto ``{section: {field: value}}`` config overrides."""
    scenario: dict[str, Any] = {"epsilon": args.epsilon, "beta": args.beta}
    if args.dipole is not None:
        vector = np.asarray(args.dipole, dtype=float)
        magnitude = float(np.linalg.norm(vector))
        scenario["dipole"] = magnitude
        if magnitude > 0.0:
            scenario["dipole_direction"] = tuple(float(x) for x in vector / magnitude)
    if args.no_rontgen:
        scenario["include_rontgen"] = False
    return {
        "scenario": scenario,
        "grid": {"n_polar": args.grid_polar, "n_azimuth": args.grid_azimuth},
        "evolve": {"n_polar": args.grid_polar, "n_azimuth": args.grid_azimuth},
        "output": {"path": args.out, "units": "si" if args.si else None},
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Application entry point. Returns the process exit status."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings, verbose=args.verbose)

    # --- Command router ---
    command_fn = COMMAND_MAP[args.command]
    try:
        config = load_run_config(args.config or settings.default_config, overrides_from_args(args))
        logger.info("Running %s", args.command)
        command_fn(config)
    except ConfigError as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_CONFIG
    except FitWindowError as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except DomainError as exc:
        logger.error("Invalid scenario or grid: %s", exc)
        return EXIT_CONFIG
    except SimulationError as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    logger.info("Finished %s", args.command)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
