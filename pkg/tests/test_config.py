"""Config file parsing, precedence and error locations."""

import pytest

from config.loader import ConfigError, build_run_config, load_run_config, parse_config_text
from config.settings import RunConfig
from utils.export import summary_frame, write_csv

FRICTION_CFG = """\
# moving atom
scenario.epsilon = 1e-3
scenario.beta = 0 0 1e-3

scenario.dipole_direction = 1, 0, 0
grid.n_polar = 8   # coarse
"""


# ======================================================================
# Parsing
# ======================================================================

def test_parse_records_values_and_lines():
    source = parse_config_text(FRICTION_CFG, "friction.cfg")
    assert source.values["scenario"] == {"epsilon": "1e-3", "beta": "0 0 1e-3", "dipole_direction": "1, 0, 0"}
    assert source.values["grid"] == {"n_polar": "8"}
    assert source.lines == {
        "scenario.epsilon": 2,
        "scenario.beta": 3,
        "scenario.dipole_direction": 5,
        "grid.n_polar": 6,
    }


def test_parsed_text_validates_into_run_config():
    config = build_run_config(parse_config_text(FRICTION_CFG))
    assert config.scenario.epsilon == 1e-3
    assert config.scenario.beta == (0.0, 0.0, 1e-3)
    assert config.scenario.dipole_direction == (1.0, 0.0, 0.0)
    assert config.grid.n_polar == 8
    assert config.grid.n_azimuth == 32


def test_later_duplicates_win():
    source = parse_config_text("grid.n_polar = 4\ngrid.n_polar = 12\n")
    assert source.values["grid"]["n_polar"] == "12"
    assert source.lines["grid.n_polar"] == 2


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("scenario.epsilon = 1e-3\nepsilon = 2\n", 2, "section.field"),
        ("\n\nnothing.here = 1\n", 3, "unknown section"),
        ("grid.n_polar = 8\ngrid.n_modes = 3\n", 2, "unknown field"),
        ("# header\nscenario.epsilon\n", 2, "key = value"),
    ],
)
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config_text(text, "bad.cfg")
    assert info.value.line == line
    assert info.value.path == "bad.cfg"
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"bad.cfg:{line}: ")


# ======================================================================
# Validation
# ======================================================================

def test_invalid_value_reports_file_line_and_field():
    source = parse_config_text("# run\ngrid.n_polar = many\n", "run.cfg")
    with pytest.raises(ConfigError) as info:
        build_run_config(source)
    assert info.value.line == 2
    assert info.value.field == "grid.n_polar"
    assert str(info.value).startswith("run.cfg:2: grid.n_polar: ")


def test_out_of_range_values_are_rejected():
    with pytest.raises(ConfigError):
        build_run_config(parse_config_text("scenario.epsilon = -1\n"))
    with pytest.raises(ConfigError):
        build_run_config(parse_config_text("emitter.velocities = 0, 1.2\n"))
    with pytest.raises(ConfigError):
        build_run_config(parse_config_text("scenario.beta = 0 1\n"))


def test_invalid_flag_is_attributed_to_the_command_line():
    with pytest.raises(ConfigError) as info:
        build_run_config(None, {"grid": {"n_polar": 1}})
    assert info.value.path == "command line"
    assert info.value.line is None


def test_list_and_optional_fields():
    config = build_run_config(
        parse_config_text(
            "emitter.velocities = 0, 0.1 0.5\n"
            "sweep.epsilons = 0 1e-3\n"
            "evolve.dipole = none\n"
        )
    )
    assert config.emitter.velocities == [0.0, 0.1, 0.5]
    assert config.sweep.epsilons == [0.0, 1e-3]
    assert config.evolve.dipole is None


def test_defaults():
    config = RunConfig()
    assert config.scenario.unit_system == "natural"
    assert config.scenario.include_rontgen is True
    assert (config.grid.n_polar, config.grid.n_azimuth, config.grid.n_freq) == (16, 32, 301)
    assert config.evolve.dipole == 0.05
    assert config.output.path is None


# ======================================================================
# Precedence
# ======================================================================

def test_flags_override_file_override_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("FRICTION_SCENARIO__EPSILON", "0.005")
    monkeypatch.setenv("FRICTION_GRID__N_AZIMUTH", "12")
    path = tmp_path / "run.cfg"
    path.write_text("scenario.epsilon = 1e-3\ngrid.n_polar = 6\n", encoding="utf-8")

    from_env = load_run_config(None)
    assert from_env.scenario.epsilon == 0.005

    from_file = load_run_config(path)
    assert from_file.scenario.epsilon == 1e-3
    assert from_file.grid.n_azimuth == 12

    from_flags = load_run_config(path, {"scenario": {"epsilon": 0.01, "beta": None}, "grid": {"n_polar": None}})
    assert from_flags.scenario.epsilon == 0.01
    assert from_flags.grid.n_polar == 6


def test_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_run_config(tmp_path / "absent.cfg")
    assert "absent.cfg" in str(info.value)


def test_unwritable_output_is_a_config_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        write_csv(summary_frame({"gamma": 1.0}), blocker / "out.csv")
    assert info.value.field == "output.path"
    assert info.value.path == str(blocker / "out.csv")


def test_output_units_default_to_natural():
    config = RunConfig()
    assert config.output.units == "natural"
    assert config.output.omega_unit_si == pytest.approx(1.519267447e15, rel=1e-9)
