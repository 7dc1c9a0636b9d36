"""
============================================================================
Application & Run Settings
============================================================================
Centralized configuration using Pydantic for validation.

AppSettings holds process-wide options (logging, default config file) and
loads from .env and FRICTION_* environment variables. RunConfig holds one
simulation run: scenario, grids, time-domain options and output. Its
sections can be set from FRICTION_<SECTION>__<FIELD> variables, which a
config file and command-line flags override in turn.
============================================================================
"""

from __future__ import annotations

import re
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

import scipy.constants as SI
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Project root directory
ROOT_DIR = Path(__file__).resolve().parent.parent

ENV_PREFIX = "FRICTION_"

Vector3 = tuple[float, float, float]

_SPLIT = re.compile(r"[\s,]+")


def _split_numbers(value):
    """'0 0 1e-3' or '0, 0, 1e-3' -> ['0', '0', '1e-3']; other values pass through."""
    if isinstance(value, str):
        text = value.strip().strip("()[]")
        return [part for part in _SPLIT.split(text) if part]
    return value


class AppSettings(BaseSettings):
    """
    Process-wide settings loaded from environment variables.
    All settings can be overridden via .env file or FRICTION_* env vars.
    """

    # --- Application ---
    app_name: str = Field(default="Vacuum Friction", description="Application display name")
    app_version: str = Field(default="1.0.0", description="Application version")

    # --- Logging ---
    log_level: str = Field(default="INFO", description="Root log level: DEBUG | INFO | WARNING | ERROR")
    enable_debug: bool = Field(default=False, description="Force DEBUG logging")

    # --- Runs ---
    default_config: Optional[str] = Field(
        default=None,
        description="Config file used when --config is not given",
    )

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_file=str(ROOT_DIR / ".env"),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# ======================================================================
# Run configuration sections
# ======================================================================

class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ScenarioConfig(_Section):
    """The atom. Natural units use epsilon/beta; SI uses mass/momentum."""

    unit_system: Literal["natural", "si"] = Field(default="natural", description="natural | si")
    omega_a: float = Field(default=1.0, gt=0.0, description="Transition angular frequency")
    dipole: float = Field(default=1.0, ge=0.0, description="Dipole magnitude")
    dipole_direction: Vector3 = Field(default=(0.0, 0.0, 1.0), description="Dipole orientation, normalized on use")
    epsilon: float = Field(default=0.0, ge=0.0, description="Recoil parameter hbar omega_A / (M c^2)")
    beta: Vector3 = Field(default=(0.0, 0.0, 0.0), description="Velocity p0/(M c)")
    mass: Optional[float] = Field(default=None, gt=0.0, description="SI mass [kg]; derived from epsilon when unset")
    momentum: Optional[Vector3] = Field(default=None, description="SI canonical momentum [kg m/s]; derived from beta when unset")
    include_rontgen: bool = Field(default=True, description="Keep the Roentgen part of the coupling")

    @field_validator("dipole_direction", "beta", "momentum", mode="before")
    @classmethod
    def split_vectors(cls, value):
        return _split_numbers(value)


class GridConfig(_Section):
    """Direction and frequency quadrature sizes."""

    n_polar: int = Field(default=16, ge=2, description="Gauss-Legendre nodes in cos(theta)")
    n_azimuth: int = Field(default=32, ge=4, description="Midpoint nodes in phi")
    n_freq: int = Field(default=301, ge=2, description="Gauss-Legendre frequency nodes (evolve)")
    freq_halfwidth_in_gamma: float = Field(default=25.0, gt=0.0, description="Frequency window half-width in linewidths")


class EvolveConfig(_Section):
    """Time-domain run options."""

    t_end_in_inverse_gamma: float = Field(default=2.0, gt=0.0, description="Run length in units of 1/Gamma")
    dt_in_inverse_gamma: float = Field(default=1e-3, gt=0.0, description="Maximum step in units of 1/Gamma")
    sample_every: int = Field(default=10, ge=1, description="Sample stride in steps")
    n_polar: int = Field(default=8, ge=2, description="Direction nodes in cos(theta) for the bath")
    n_azimuth: int = Field(default=16, ge=4, description="Direction nodes in phi for the bath")
    dipole: Optional[float] = Field(
        default=0.05,
        gt=0.0,
        description="Dipole used for evolve only, keeping Gamma small against omega_A; 'none' keeps the scenario dipole",
    )

    @field_validator("dipole", mode="before")
    @classmethod
    def none_keeps_scenario(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("", "none"):
            return None
        return value


class EmitterConfig(_Section):
    """Two-way emitter audit."""

    omega_0: float = Field(default=1.0, gt=0.0, description="Rest-frame photon angular frequency")
    velocities: list[float] = Field(
        default_factory=lambda: [0.0, 1e-6, 0.01, 0.1, 0.5],
        description="Lab velocities v/c",
    )

    @field_validator("velocities", mode="before")
    @classmethod
    def split_velocities(cls, value):
        return _split_numbers(value)

    @field_validator("velocities")
    @classmethod
    def _subluminal(cls, values: list[float]) -> list[float]:
        if not values:
            raise ValueError("at least one velocity is required")
        if any(abs(v) >= 1.0 for v in values):
            raise ValueError("|v|/c must be < 1")
        return values


class SweepConfig(_Section):
    """(epsilon, |beta|) lattice scanned by the sweep command."""

    epsilons: list[float] = Field(default_factory=lambda: [0.0, 1e-4, 1e-3, 1e-2], description="Recoil parameters")
    betas: list[float] = Field(default_factory=lambda: [0.0, 1e-4, 1e-3, 1e-2], description="Speeds |beta|")
    beta_direction: Vector3 = Field(default=(0.0, 0.0, 1.0), description="Direction of beta")

    @field_validator("epsilons", "betas", "beta_direction", mode="before")
    @classmethod
    def split_lists(cls, value):
        return _split_numbers(value)

    @field_validator("epsilons", "betas")
    @classmethod
    def _non_negative(cls, values: list[float]) -> list[float]:
        if not values or any(v < 0.0 for v in values):
            raise ValueError("needs at least one value, all >= 0")
        return values


class OutputConfig(_Section):
    """Where results go and in which units they are reported."""

    path: Optional[str] = Field(default=None, description="CSV destination; '-' or unset writes to stdout")
    format: Literal["csv"] = Field(default="csv", description="Output format tag")
    units: Literal["natural", "si"] = Field(default="natural", description="Units of reported values: natural | si")
    omega_unit_si: float = Field(
        default=SI.e / SI.hbar,
        gt=0.0,
        description="SI value [rad/s] of the natural frequency unit of a natural-unit scenario (default 1 eV/hbar)",
    )


class RunConfig(BaseSettings):
    """One simulation run. Sections map to ``section.field`` config keys."""

    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    evolve: EvolveConfig = Field(default_factory=EvolveConfig)
    emitter: EmitterConfig = Field(default_factory=EmitterConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="forbid",
    )


SECTIONS: dict[str, type[_Section]] = {
    name: field.annotation for name, field in RunConfig.model_fields.items()
}


@lru_cache()
def get_settings() -> AppSettings:
    """
    Returns a cached singleton instance of AppSettings.
    Call this instead of instantiating AppSettings directly.
    """
    return AppSettings()
