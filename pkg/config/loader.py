"""
============================================================================
Run Configuration Loader
============================================================================
Reads plain ``section.field = value`` config files and merges them with
command-line overrides into a validated RunConfig.

    # comment
    scenario.epsilon = 1e-3
    scenario.beta = 0 0 1e-3
    grid.n_polar = 16

Precedence: flags > config file > FRICTION_* environment > defaults.
Every failure raises ConfigError naming the file, line and field.
============================================================================
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

from dotenv.parser import parse_stream
from pydantic import ValidationError

from config.settings import SECTIONS, RunConfig

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Invalid run configuration, with the location of the offending entry."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None, field: Optional[str] = None):
        self.message = message
        self.path = path
        self.line = line
        self.field = field
        super().__init__(str(self))

    def __str__(self) -> str:
        where = self.path or "<config>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        if self.field:
            where = f"{where}: {self.field}"
        return f"{where}: {self.message}"


@dataclass
class ConfigSource:
    """Parsed config entries with the line each key came from."""

    path: Optional[str] = None
    values: dict[str, dict[str, str]] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict)

    def as_nested(self) -> dict[str, dict[str, Any]]:
        return {section: dict(entries) for section, entries in self.values.items()}


# ======================================================================
# Parsing
# ======================================================================

def _split_key(key: str, path: Optional[str], line: int) -> tuple[str, str]:
    section, sep, name = key.strip().lower().partition(".")
    if not sep or not section or not name:
        raise ConfigError("keys must look like section.field", path, line, key)
    model = SECTIONS.get(section)
    if model is None:
        raise ConfigError(f"unknown section {section!r} (expected one of {', '.join(SECTIONS)})", path, line, key)
    if name not in model.model_fields:
        raise ConfigError(f"unknown field {name!r} in section {section!r}", path, line, key)
    return section, name


def parse_config_text(text: str, path: Optional[str] = None) -> ConfigSource:
    """Parse config text into a ConfigSource. Later duplicates win."""
    source = ConfigSource(path=path)
    for binding in parse_stream(io.StringIO(text)):
        raw = binding.original.string
        # a binding's original text starts with any blank lines before it
        line = binding.original.line + raw[: len(raw) - len(raw.lstrip())].count("\n")
        if binding.error:
            raise ConfigError(f"cannot parse {binding.original.string.strip()!r}", path, line)
        if binding.key is None:
            continue  # blank line or comment
        if binding.value is None:
            raise ConfigError("expected 'key = value'", path, line, binding.key)
        section, name = _split_key(binding.key, path, line)
        source.values.setdefault(section, {})[name] = binding.value.strip()
        source.lines[f"{section}.{name}"] = line
    logger.debug("Parsed %d config entries from %s", len(source.lines), path or "<text>")
    return source


def read_config_file(path: Path | str) -> ConfigSource:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc.strerror or exc}", str(path)) from exc
    return parse_config_text(text, str(path))


# ======================================================================
# Merge & validation
# ======================================================================

def _merge(base: dict[str, dict[str, Any]], overrides: Mapping[str, Mapping[str, Any]]) -> dict[str, dict[str, Any]]:
    merged = {section: dict(values) for section, values in base.items()}
    for section, values in overrides.items():
        for name, value in values.items():
            if value is not None:
                merged.setdefault(section, {})[name] = value
    return merged


def build_run_config(
    source: Optional[ConfigSource] = None,
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> RunConfig:
    """
    Validate file entries plus overrides into a RunConfig.

    Args:
        source:    Parsed config file, or None.
        overrides: ``{section: {field: value}}`` from flags; None values are skipped.
    """
    source = source or ConfigSource()
    merged = _merge(source.as_nested(), overrides or {})
    try:
        return RunConfig(**merged)
    except ValidationError as exc:
        error = exc.errors()[0]
        loc = [str(part) for part in error["loc"]]
        key = ".".join(loc[:2])
        from_flag = overrides is not None and len(loc) >= 2 and loc[1] in (overrides.get(loc[0]) or {})
        line = None if from_flag else source.lines.get(key)
        origin = "command line" if from_flag else source.path
        raise ConfigError(error["msg"], origin, line, key) from exc


def load_run_config(
    path: Optional[Path | str] = None,
    overrides: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> RunConfig:
    """Read ``path`` (optional) and apply ``overrides`` on top."""
    source = read_config_file(path) if path else None
    config = build_run_config(source, overrides)
    logger.debug("Run config: %s", config.model_dump())
    return config
