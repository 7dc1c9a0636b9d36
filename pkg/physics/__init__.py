# ============================================================================
# Physics Module
# ============================================================================
# Moving two-level atom with the Roentgen interaction: scenario and units,
# mode-bath discretization, couplings, golden-rule rate and drift, the
# time-domain engine and the relativistic bookkeeping.
# ============================================================================

from physics.coupling import CouplingFactors, b_vector, coupling_g, g_squared_expanded
from physics.dynamics import (
    AmplitudeState,
    Trajectory,
    bath_grid,
    evolve,
    expect_BxD,
    expect_P,
    fit_decay_rate,
    fit_momentum_drift,
    fit_momentum_slope,
    grid_golden_rule,
    kinetic_momentum,
    mean_bxd_rate,
)
from physics.errors import DomainError, FitWindowError, IntegratorError, SimulationError
from physics.golden_rule import (
    DecayReport,
    EmissionPattern,
    OracleCheck,
    RadialReduction,
    angular_oracles,
    convergence_study,
    decay_rate_closed,
    decay_rate_quadrature,
    decay_report,
    detuning,
    emission_pattern,
    momentum_drift_closed,
    momentum_drift_quadrature,
    omega_plus,
    radial_integrand,
)
from physics.modes import (
    DirectionGrid,
    FrequencyGrid,
    Mode,
    ModeGrid,
    build_mode_grid,
    direction_grid,
    frequency_grid,
    polarization_basis,
)
from physics.relativity import (
    EmitterScenario,
    FrictionReport,
    balance,
    doppler_pair,
    emitter_scenario,
    friction_consistency,
    internal_energy_rate,
    mass_rate,
)
from physics.scales import (
    AtomParams,
    ReducedAtom,
    SmallParams,
    UnitSystem,
    reduce,
    small_params,
    to_natural,
)

__all__ = [
    # scales
    "AtomParams", "ReducedAtom", "SmallParams", "UnitSystem", "reduce", "small_params", "to_natural",
    # modes
    "Mode", "DirectionGrid", "FrequencyGrid", "ModeGrid",
    "polarization_basis", "direction_grid", "frequency_grid", "build_mode_grid",
    # coupling
    "CouplingFactors", "b_vector", "coupling_g", "g_squared_expanded",
    # golden rule
    "RadialReduction", "DecayReport", "OracleCheck", "EmissionPattern",
    "detuning", "omega_plus", "radial_integrand", "decay_rate_quadrature",
    "momentum_drift_quadrature", "decay_rate_closed", "momentum_drift_closed",
    "decay_report", "angular_oracles", "emission_pattern", "convergence_study",
    # dynamics
    "AmplitudeState", "Trajectory", "bath_grid", "evolve", "grid_golden_rule",
    "expect_P", "expect_BxD", "kinetic_momentum", "fit_decay_rate",
    "fit_momentum_drift", "fit_momentum_slope", "mean_bxd_rate",
    # relativity
    "EmitterScenario", "FrictionReport", "doppler_pair", "emitter_scenario", "balance",
    "mass_rate", "internal_energy_rate", "friction_consistency",
    # errors
    "SimulationError", "DomainError", "FitWindowError", "IntegratorError",
]
