"""End-to-end command runs through the entry point."""

import math

import pandas as pd
import pytest
import scipy.constants as SI

from app import EXIT_CONFIG, EXIT_OK, build_parser, main, overrides_from_args

GAMMA_0 = 1.0 / (3.0 * math.pi)
FAST_GRID = ["--grid-polar", "8", "--grid-azimuth", "16"]


def _run(tmp_path, *argv, name="out.csv"):
    out = tmp_path / name
    status = main([*argv, "--out", str(out)])
    return status, out


def _config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


# ======================================================================
# Flags
# ======================================================================

def test_dipole_flag_splits_magnitude_and_direction():
    args = build_parser().parse_args(["drift", "--dipole", "0", "3", "4", "--epsilon", "1e-3", "--no-rontgen"])
    overrides = overrides_from_args(args)
    assert overrides["scenario"]["dipole"] == pytest.approx(5.0)
    assert overrides["scenario"]["dipole_direction"] == pytest.approx((0.0, 0.6, 0.8))
    assert overrides["scenario"]["epsilon"] == 1e-3
    assert overrides["scenario"]["include_rontgen"] is False
    assert overrides["grid"] == {"n_polar": None, "n_azimuth": None}


def test_unknown_command_exits_through_argparse():
    with pytest.raises(SystemExit):
        main(["teleport"])


# ======================================================================
# Commands
# ======================================================================

def test_decay_rate_static_atom(tmp_path):
    status, out = _run(tmp_path, "decay-rate")
    assert status == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["epsilon", "beta", "gamma_quad", "gamma_closed", "rel_dev", "valid"]
    assert frame["gamma_closed"].iloc[0] == pytest.approx(0.10610330, abs=1e-8)
    assert frame["gamma_quad"].iloc[0] == pytest.approx(GAMMA_0, rel=1e-9)
    assert bool(frame["valid"].iloc[0])


def test_drift_moving_atom(tmp_path):
    status, out = _run(
        tmp_path, "drift", "--epsilon", "1e-3", "--beta", "0", "0", "1e-3", "--dipole", "1", "0", "0",
    )
    assert status == EXIT_OK
    row = pd.read_csv(out).iloc[0]
    assert row["drift_closed_z"] == pytest.approx(-1.0610e-4, rel=1e-4)
    assert row["drift_quad_z"] == pytest.approx(row["drift_closed_z"], rel=0.01)
    assert row["mass_defect_drift_z"] == pytest.approx(row["drift_closed_z"], rel=1e-12)
    assert row["friction_deviation"] <= 1e-12


def test_output_is_deterministic(tmp_path):
    first = _run(tmp_path, "drift", "--epsilon", "1e-3", "--beta", "0", "0", "1e-3", *FAST_GRID, name="a.csv")[1]
    second = _run(tmp_path, "drift", "--epsilon", "1e-3", "--beta", "0", "0", "1e-3", *FAST_GRID, name="b.csv")[1]
    assert first.read_bytes() == second.read_bytes()
    assert b"\r\n" not in first.read_bytes()


def test_emitter_audit(tmp_path):
    status, out = _run(tmp_path, "emitter")
    assert status == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame["beta"]) == [0.0, 1e-6, 0.01, 0.1, 0.5]
    at_rest = frame.iloc[0]
    assert at_rest["dE"] == -2.0 and at_rest["dp"] == 0.0
    assert frame["residual"].abs().max() <= 1e-15 * frame["dE"].abs().max()
    tenth = frame[frame["beta"] == 0.1].iloc[0]
    assert tenth["omega_l"] == pytest.approx(0.90453404, abs=1e-8)
    assert tenth["omega_r"] == pytest.approx(1.10554160, abs=1e-8)


def test_emitter_writes_to_stdout(capsys):
    assert main(["emitter", "--out", "-"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("beta,gamma,omega_l,omega_r,dE,dp,residual,photon_dE,photon_dp\n")


def test_sweep_lattice(tmp_path):
    config = _config(tmp_path, "sweep.epsilons = 0 1e-3 1e-2\nsweep.betas = 0, 1e-3, 1e-2\nscenario.dipole_direction = 1 0 0\n")
    status, out = _run(tmp_path, "sweep", "--config", config, *FAST_GRID)
    assert status == EXIT_OK
    frame = pd.read_csv(out)
    assert len(frame) == 9
    assert (frame["rel_dev_gamma"].abs() <= 5.0 * (frame["epsilon"] + frame["beta"]) ** 2 + 1e-9).all()
    assert frame["valid"].all()


def test_oracles(tmp_path):
    status, out = _run(tmp_path, "oracles", "--beta", "0", "0.3", "0.5", *FAST_GRID)
    assert status == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["name", "component", "quadrature", "analytic", "abs_error"]
    assert set(frame["name"]) == {"transverse", "doppler", "rontgen"}
    assert frame["abs_error"].max() <= 1e-10


def test_pattern(tmp_path):
    status, out = _run(tmp_path, "pattern", "--epsilon", "1e-3", "--beta", "0", "0", "1e-2", *FAST_GRID)
    assert status == EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["kx", "ky", "kz", "weight", "omega_plus", "rate_density"]
    assert len(frame) == 8 * 16
    assert (frame["weight"] * frame["rate_density"]).sum() == pytest.approx(GAMMA_0, rel=5e-3)


def test_evolve_small_bath(tmp_path):
    config = _config(
        tmp_path,
        "scenario.epsilon = 1e-3\n"
        "scenario.beta = 0 0 1e-3\n"
        "scenario.dipole_direction = 1 0 0\n"
        "grid.n_freq = 81\n"
        "evolve.n_polar = 2\n"
        "evolve.n_azimuth = 4\n"
        "evolve.t_end_in_inverse_gamma = 1.2\n"
        "evolve.dt_in_inverse_gamma = 2e-3\n"
        "evolve.sample_every = 5\n",
    )
    status = main(["evolve", "--config", config, "--out", str(tmp_path / "traj.csv")])
    assert status == EXIT_OK
    frame = pd.read_csv(tmp_path / "traj.csv")
    assert list(frame.columns) == ["t", "pop", "Px", "Py", "Pz", "BxDx", "BxDy", "BxDz", "norm"]
    assert frame["pop"].iloc[0] == 1.0
    assert frame["pop"].iloc[-1] < 0.5
    assert frame["Pz"].iloc[-1] < frame["Pz"].iloc[0]


# ======================================================================
# Failures
# ======================================================================

def test_malformed_config_exits_with_config_status(tmp_path):
    config = _config(tmp_path, "scenario.epsilon = lots\n")
    status, out = _run(tmp_path, "decay-rate", "--config", config)
    assert status == EXIT_CONFIG
    assert not out.exists()


def test_unknown_config_key_exits_with_config_status(tmp_path):
    config = _config(tmp_path, "scenario.speed = 0.1\n")
    assert _run(tmp_path, "decay-rate", "--config", config)[0] == EXIT_CONFIG


def test_invalid_scenario_exits_with_config_status(tmp_path):
    assert _run(tmp_path, "decay-rate", "--beta", "0", "0", "1.5")[0] == EXIT_CONFIG


def test_si_scenario_without_mass_exits_with_config_status(tmp_path):
    config = _config(tmp_path, "scenario.unit_system = si\nscenario.dipole = 1e-29\n")
    assert _run(tmp_path, "decay-rate", "--config", config)[0] == EXIT_CONFIG


def test_unwritable_output_path_exits_with_config_status(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory", encoding="utf-8")
    status = main(["decay-rate", "--out", str(blocker / "out.csv")])
    assert status == EXIT_CONFIG
    assert blocker.read_text(encoding="utf-8") == "not a directory"


# ======================================================================
# Output units
# ======================================================================

OMEGA_EV = SI.e / SI.hbar


def test_si_flag_reports_rates_in_inverse_seconds(tmp_path):
    natural = pd.read_csv(_run(tmp_path, "decay-rate", name="natural.csv")[1]).iloc[0]
    status, out = _run(tmp_path, "decay-rate", "--si", name="si.csv")
    assert status == EXIT_OK
    si = pd.read_csv(out).iloc[0]
    assert si["gamma_closed"] == pytest.approx(GAMMA_0 * OMEGA_EV, rel=1e-12)
    assert si["gamma_quad"] == pytest.approx(natural["gamma_quad"] * OMEGA_EV, rel=1e-12)
    assert si["rel_dev"] == natural["rel_dev"]
    assert natural["gamma_closed"] == pytest.approx(0.10610330, abs=1e-8)


def test_si_flag_reports_drift_in_newtons(tmp_path):
    argv = ["drift", "--epsilon", "1e-3", "--beta", "0", "0", "1e-3", *FAST_GRID]
    natural = pd.read_csv(_run(tmp_path, *argv, name="natural.csv")[1]).iloc[0]
    si = pd.read_csv(_run(tmp_path, *argv, "--si", name="si.csv")[1]).iloc[0]
    newton = SI.hbar * OMEGA_EV**2 / SI.c
    assert si["drift_closed_z"] == pytest.approx(natural["drift_closed_z"] * newton, rel=1e-12)
    assert si["drift_quad_z"] == pytest.approx(natural["drift_quad_z"] * newton, rel=1e-12)
    assert si["friction_deviation"] == natural["friction_deviation"]


def test_si_scenario_uses_its_own_frequency_unit(tmp_path):
    omega_a = 1.5e15
    config = _config(
        tmp_path,
        "scenario.unit_system = si\n"
        f"scenario.omega_a = {omega_a}\n"
        "scenario.dipole = 1e-29\n"
        "scenario.epsilon = 1e-9\n"
        "output.units = si\n",
    )
    status, out = _run(tmp_path, "decay-rate", "--config", config)
    assert status == EXIT_OK
    gamma = pd.read_csv(out)["gamma_closed"].iloc[0]
    expected = omega_a**3 * 1e-58 / (3.0 * math.pi * SI.epsilon_0 * SI.hbar * SI.c**3)
    assert gamma == pytest.approx(expected * (1.0 - 1.5e-9), rel=1e-9)


# ======================================================================
# Determinism
# ======================================================================

def _evolve_config(tmp_path):
    return _config(
        tmp_path,
        "scenario.epsilon = 1e-3\n"
        "scenario.beta = 0 0 1e-3\n"
        "scenario.dipole_direction = 1 0 0\n"
        "grid.n_freq = 21\n"
        "evolve.n_polar = 2\n"
        "evolve.n_azimuth = 4\n"
        "evolve.t_end_in_inverse_gamma = 0.2\n"
        "evolve.dt_in_inverse_gamma = 5e-3\n"
        "evolve.sample_every = 4\n",
        name="evolve.cfg",
    )


def test_evolve_output_is_byte_identical(tmp_path):
    config = _evolve_config(tmp_path)
    first = _run(tmp_path, "evolve", "--config", config, name="a.csv")[1]
    second = _run(tmp_path, "evolve", "--config", config, name="b.csv")[1]
    assert first.read_bytes() == second.read_bytes()


def test_sweep_output_is_byte_identical(tmp_path):
    config = _config(tmp_path, "sweep.epsilons = 0 1e-3\nsweep.betas = 0, 1e-3\n", name="sweep.cfg")
    first = _run(tmp_path, "sweep", "--config", config, *FAST_GRID, name="a.csv")[1]
    second = _run(tmp_path, "sweep", "--config", config, *FAST_GRID, name="b.csv")[1]
    assert first.read_bytes() == second.read_bytes()
