"""
============================================================================
Time-Domain Mode-Bath Dynamics
============================================================================
Integrates the amplitude equations of the excited atom coupled to a
discretized vacuum,

    dc_e/dt = sum_m  Om_m g_m c_m exp(+i dw_m t)
    dc_m/dt =       -Om_m g_m c_e exp(-i dw_m t)

with a fixed-step classical Runge-Kutta scheme, and samples the excited
population, the canonical momentum <P> and the Roentgen observable <B x d>.

Mode grids are expressed in the natural units of the reduced scenario
(hbar = c = eps0 = 1; omega_A = 1 for SI scenarios). Trajectories come
back in the caller's units.

Usage:
    from physics.dynamics import bath_grid, evolve, fit_decay_rate

    grid = bath_grid(atom, n_polar=8, n_azimuth=16, n_freq=301, halfwidth_in_gamma=25)
    traj = evolve(atom, grid, t_end=2 / gamma, dt_max=1e-3 / gamma)
    fit_decay_rate(traj)
============================================================================
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from physics.coupling import b_vector_array, coupling_weights, g_array
from physics.errors import DomainError, FitWindowError, IntegratorError
from physics.golden_rule import _roots, decay_rate_closed
from physics.modes import ModeGrid, build_mode_grid, direction_grid, frequency_grid
from physics.scales import ReducedAtom, Scenario, resolve_scenario

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-6
FIT_WINDOW = (0.2, 1.0)

TRAJECTORY_COLUMNS = ["t", "pop", "Px", "Py", "Pz", "BxDx", "BxDy", "BxDz", "norm"]


# ======================================================================
# Domain types
# ======================================================================

@dataclass(frozen=True)
class AmplitudeState:
    """Excited and one-photon amplitudes at time t (natural units)."""

    t: float
    c_e: complex
    c_modes: np.ndarray

    @property
    def norm(self) -> float:
        return float(abs(self.c_e) ** 2 + np.sum(np.abs(self.c_modes) ** 2))

    @property
    def population(self) -> float:
        return float(abs(self.c_e) ** 2)


@dataclass(frozen=True)
class Trajectory:
    """
    Sampled observables of one run, in the caller's units.

    Attributes:
        times:       Sample times, strictly increasing.
        population:  |c_e|^2.
        momentum:    <P>, shape (n, 3).
        bxd:         <B x d>, shape (n, 3).
        norm:        |c_e|^2 + sum |c_m|^2.
        gamma_grid:  Same-grid golden-rule reference rate.
        p0:          Initial canonical momentum.
        final_state: Amplitudes at the last sample (natural units).
    """

    times: np.ndarray
    population: np.ndarray
    momentum: np.ndarray
    bxd: np.ndarray
    norm: np.ndarray
    gamma_grid: Optional[float] = None
    p0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    final_state: Optional[AmplitudeState] = None

    def __post_init__(self) -> None:
        if np.any(np.diff(self.times) <= 0.0):
            raise DomainError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.shape[0])

    def to_frame(self) -> pd.DataFrame:
        """Columns t, pop, Px, Py, Pz, BxDx, BxDy, BxDz, norm."""
        return pd.DataFrame(
            np.column_stack([self.times, self.population, self.momentum, self.bxd, self.norm]),
            columns=TRAJECTORY_COLUMNS,
        )


@dataclass(frozen=True)
class _Bath:
    """Per-mode arrays the right-hand side and observables need (natural units)."""

    coupling: np.ndarray      # Om_eff * g, (N,)
    detuning: np.ndarray      # (N,)
    k: np.ndarray             # (N, 3)
    rontgen: np.ndarray       # Om_eff * b, (N, 3)
    p0: np.ndarray            # (3,)


# ======================================================================
# Grid construction
# ======================================================================

def bath_grid(
    atom: Scenario,
    n_polar: int = 8,
    n_azimuth: int = 16,
    n_freq: int = 301,
    halfwidth_in_gamma: float = 25.0,
) -> ModeGrid:
    """
    Natural-unit mode grid centered on the recoil-shifted line, spanning
    +-halfwidth_in_gamma closed-form linewidths.
    """
    reduced, _ = resolve_scenario(atom)
    gamma = decay_rate_closed(reduced)
    center = reduced.omega_A * (1.0 - 0.5 * reduced.epsilon)
    directions = direction_grid(n_polar, n_azimuth)
    frequencies = frequency_grid(center, halfwidth_in_gamma * gamma, n_freq)
    return build_mode_grid(directions, frequencies)


def _detuning_array(grid: ModeGrid, atom: ReducedAtom) -> np.ndarray:
    """omega_A - omega + omega kappa.beta - epsilon omega^2 / (2 omega_A)."""
    omega = grid.omega
    return (
        atom.omega_A
        - omega
        + omega * (grid.kappa @ atom.beta_vector)
        - atom.epsilon * omega**2 / (2.0 * atom.omega_A)
    )


def _prepare_bath(atom: ReducedAtom, grid: ModeGrid, include_rontgen: bool) -> _Bath:
    rabi = np.sqrt(coupling_weights(grid.omega, grid.w_dir, grid.w_om, atom.d))
    g = g_array(grid.kappa, grid.eps_vec, grid.omega, atom, include_rontgen=include_rontgen)
    b = b_vector_array(grid.kappa, grid.eps_vec, np.asarray(atom.e_d))
    return _Bath(
        coupling=rabi * g,
        detuning=_detuning_array(grid, atom),
        k=grid.k_vectors,
        rontgen=rabi[:, None] * b,
        p0=atom.momentum,
    )


def _check_window(atom: ReducedAtom, grid: ModeGrid) -> np.ndarray:
    """Roots per grid direction; DomainError if any falls outside the frequency window."""
    root, jacobian = _roots(grid.directions.kappa, atom)
    lower, upper = grid.frequencies.lower, grid.frequencies.upper
    if np.any(root < lower) or np.any(root > upper):
        raise DomainError(
            f"resonance roots [{root.min():.6g}, {root.max():.6g}] leave the "
            f"frequency window [{lower:.6g}, {upper:.6g}]"
        )
    return jacobian


# ======================================================================
# Same-grid golden rule
# ======================================================================

def grid_golden_rule(atom: Scenario, grid: ModeGrid, include_rontgen: bool = True) -> float:
    """
    Golden-rule rate on the grid's own directions and polarization basis,
    with the frequency delta resolved at each direction's root.
    """
    reduced, scale = resolve_scenario(atom)
    _check_window(reduced, grid)
    root, jacobian = _roots(grid.kappa, reduced)
    g = g_array(grid.kappa, grid.eps_vec, root, reduced, include_rontgen=include_rontgen)
    weight = coupling_weights(root, grid.w_dir, 1.0, reduced.d)
    # each (direction, polarization) pair appears once per frequency node
    per_mode = weight * g**2 / jacobian / len(grid.frequencies)
    return float(2.0 * math.pi * np.sum(per_mode)) * scale.rate


# ======================================================================
# Observables
# ======================================================================

def _expect_P(c_e: complex, c_modes: np.ndarray, bath: _Bath) -> np.ndarray:
    probs = np.abs(c_modes) ** 2
    return bath.p0 * (abs(c_e) ** 2 + np.sum(probs)) - probs @ bath.k


def _expect_BxD(c_e: complex, c_modes: np.ndarray, t: float, bath: _Bath) -> np.ndarray:
    phase = np.exp(-1j * bath.detuning * t)
    return -2.0 * np.imag((c_e * np.conj(c_modes) * phase) @ bath.rontgen)


def expect_P(state: AmplitudeState, p0, grid: ModeGrid) -> np.ndarray:
    """<P> = p0 |c_e|^2 + sum (p0 - k) |c_m|^2, natural units."""
    probs = np.abs(state.c_modes) ** 2
    p0 = np.asarray(p0, dtype=float)
    return p0 * state.population + np.sum(probs) * p0 - probs @ grid.k_vectors


def expect_BxD(state: AmplitudeState, grid: ModeGrid, atom: Scenario, include_rontgen: bool = True) -> np.ndarray:
    """<B x d> = -2 Im sum Om b c_e c_m* exp(-i dw t), natural units."""
    reduced, _ = resolve_scenario(atom)
    bath = _prepare_bath(reduced, grid, include_rontgen)
    return _expect_BxD(state.c_e, state.c_modes, state.t, bath)


def kinetic_momentum(trajectory: Trajectory) -> np.ndarray:
    """Kinetic momentum M dR/dt = <P> - <B x d> at every sample."""
    return trajectory.momentum - trajectory.bxd


# ======================================================================
# Integrator
# ======================================================================

def _rk4_step(c_e: complex, c_m: np.ndarray, t: float, dt: float, bath: _Bath) -> tuple[complex, np.ndarray]:
    """One classical Runge-Kutta step of the interaction-picture equations."""
    a = bath.coupling
    phase_0 = np.exp(1j * bath.detuning * t)
    half = np.exp(0.5j * bath.detuning * dt)
    phase_h = phase_0 * half
    phase_1 = phase_h * half

    def rhs(ce: complex, cm: np.ndarray, phase: np.ndarray) -> tuple[complex, np.ndarray]:
        return np.sum(a * cm * phase), -a * ce * np.conj(phase)

    k1e, k1m = rhs(c_e, c_m, phase_0)
    k2e, k2m = rhs(c_e + 0.5 * dt * k1e, c_m + 0.5 * dt * k1m, phase_h)
    k3e, k3m = rhs(c_e + 0.5 * dt * k2e, c_m + 0.5 * dt * k2m, phase_h)
    k4e, k4m = rhs(c_e + dt * k3e, c_m + dt * k3m, phase_1)
    c_e = c_e + dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
    c_m = c_m + dt / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m)
    return c_e, c_m


def evolve(
    atom: Scenario,
    grid: ModeGrid,
    t_end: float,
    dt_max: float,
    sample_every: int = 1,
    include_rontgen: bool = True,
    norm_tolerance: float = NORM_TOLERANCE,
    check_window: bool = True,
) -> Trajectory:
    """
    Integrate from c_e = 1, c_m = 0 up to ``t_end`` with steps no larger
    than ``dt_max`` (caller's time units), sampling every ``sample_every``
    steps plus the final step.
    """
    if len(grid) == 0:
        raise DomainError("evolve needs a non-empty mode grid")
    if t_end <= 0.0 or dt_max <= 0.0:
        raise DomainError(f"t_end and dt_max must be > 0, got {t_end}, {dt_max}")
    if sample_every < 1:
        raise DomainError(f"sample_every must be >= 1, got {sample_every}")

    reduced, scale = resolve_scenario(atom)
    gamma_grid = None
    if check_window:
        gamma_grid = grid_golden_rule(reduced, grid, include_rontgen=include_rontgen)

    t_final = t_end / scale.time
    n_steps = max(1, math.ceil(t_final / (dt_max / scale.time)))
    dt = t_final / n_steps

    if len(grid.frequencies) > 1 and t_final > grid.frequencies.recurrence_time:
        logger.warning(
            "t_end=%g exceeds the bath recurrence time %g; decay is no longer irreversible",
            t_final, grid.frequencies.recurrence_time,
        )

    bath = _prepare_bath(reduced, grid, include_rontgen)
    logger.debug("Evolving %d modes for %d steps (dt=%g)", len(grid), n_steps, dt)

    c_e: complex = 1.0 + 0.0j
    c_m = np.zeros(len(grid), dtype=complex)
    times, pops, moms, bxds, norms = [], [], [], [], []

    def record(step: int) -> None:
        t = step * dt
        norm = abs(c_e) ** 2 + float(np.sum(np.abs(c_m) ** 2))
        if abs(norm - 1.0) > norm_tolerance:
            raise IntegratorError(f"norm drifted to {norm!r} at t={t * scale.time:g}; reduce dt_max")
        times.append(t)
        pops.append(abs(c_e) ** 2)
        moms.append(_expect_P(c_e, c_m, bath))
        bxds.append(_expect_BxD(c_e, c_m, t, bath))
        norms.append(norm)

    record(0)
    for step in range(1, n_steps + 1):
        c_e, c_m = _rk4_step(c_e, c_m, (step - 1) * dt, dt, bath)
        if step % sample_every == 0 or step == n_steps:
            record(step)

    return Trajectory(
        times=np.asarray(times) * scale.time,
        population=np.asarray(pops),
        momentum=np.asarray(moms) * scale.momentum,
        bxd=np.asarray(bxds) * scale.momentum,
        norm=np.asarray(norms),
        gamma_grid=gamma_grid * scale.rate if gamma_grid is not None else None,
        p0=tuple(float(x) for x in bath.p0 * scale.momentum),
        final_state=AmplitudeState(t=n_steps * dt, c_e=complex(c_e), c_modes=c_m),
    )


# ======================================================================
# Analysis
# ======================================================================

def _window_mask(trajectory: Trajectory, gamma_ref: float, window: tuple[float, float]) -> np.ndarray:
    lo, hi = window[0] / gamma_ref, window[1] / gamma_ref
    return (trajectory.times >= lo) & (trajectory.times <= hi)


def _reference_rate(trajectory: Trajectory, gamma_ref: Optional[float]) -> float:
    gamma_ref = gamma_ref if gamma_ref is not None else trajectory.gamma_grid
    if gamma_ref is None or gamma_ref <= 0.0:
        raise FitWindowError("a positive reference rate is needed to place the fit window")
    return gamma_ref


def fit_decay_rate(
    trajectory: Trajectory,
    gamma_ref: Optional[float] = None,
    window: tuple[float, float] = FIT_WINDOW,
) -> float:
    """
    Least-squares slope of ln|c_e|^2 over window/gamma_ref, negated.
    gamma_ref defaults to the trajectory's same-grid golden-rule rate.
    """
    gamma_ref = _reference_rate(trajectory, gamma_ref)
    mask = _window_mask(trajectory, gamma_ref, window)
    times, pops = trajectory.times[mask], trajectory.population[mask]
    if times.size < 3:
        raise FitWindowError(f"fit window holds {times.size} samples, need at least 3")
    if np.any(pops <= 0.0):
        raise FitWindowError("population vanishes inside the fit window")
    if np.any(np.diff(pops) > 0.0):
        raise FitWindowError("population is not monotone in the fit window (recurrence reached)")
    slope, _ = np.polyfit(times, np.log(pops), 1)
    return float(-slope)


def fit_momentum_slope(
    trajectory: Trajectory,
    gamma_ref: Optional[float] = None,
    window: tuple[float, float] = FIT_WINDOW,
) -> np.ndarray:
    """Least-squares slopes of <P> components over window/gamma_ref."""
    gamma_ref = _reference_rate(trajectory, gamma_ref)
    mask = _window_mask(trajectory, gamma_ref, window)
    if np.count_nonzero(mask) < 3:
        raise FitWindowError("fit window holds fewer than 3 samples")
    slopes = np.polyfit(trajectory.times[mask], trajectory.momentum[mask], 1)[0]
    return np.asarray(slopes)


def excited_time(trajectory: Trajectory) -> np.ndarray:
    """Cumulative time spent excited, int_0^t |c_e|^2 dt', at every sample."""
    return cumulative_trapezoid(trajectory.population, trajectory.times, initial=0.0)


def fit_momentum_drift(
    trajectory: Trajectory,
    gamma_ref: Optional[float] = None,
    window: tuple[float, float] = FIT_WINDOW,
) -> np.ndarray:
    """
    Momentum drift per unit excited population: least-squares slope of
    <P> against int_0^t |c_e|^2 dt' over the window. In the rate regime
    <P>(t) = p0 + drift * int |c_e|^2, so this is the golden-rule drift of
    the fully excited atom.
    """
    gamma_ref = _reference_rate(trajectory, gamma_ref)
    mask = _window_mask(trajectory, gamma_ref, window)
    if np.count_nonzero(mask) < 3:
        raise FitWindowError("fit window holds fewer than 3 samples")
    tau = excited_time(trajectory)
    slopes = np.polyfit(tau[mask], trajectory.momentum[mask], 1)[0]
    return np.asarray(slopes)


def mean_bxd_rate(
    trajectory: Trajectory,
    gamma_ref: Optional[float] = None,
    window: tuple[float, float] = FIT_WINDOW,
) -> np.ndarray:
    """Time-averaged d<B x d>/dt over the window, from its end-point difference."""
    gamma_ref = _reference_rate(trajectory, gamma_ref)
    mask = _window_mask(trajectory, gamma_ref, window)
    idx = np.flatnonzero(mask)
    if idx.size < 2:
        raise FitWindowError("fit window holds fewer than 2 samples")
    first, last = idx[0], idx[-1]
    span = trajectory.times[last] - trajectory.times[first]
    return (trajectory.bxd[last] - trajectory.bxd[first]) / span
