# ============================================================================
# Configuration Module
# ============================================================================
# Process settings from the environment and per-run configuration from
# key-value files and command-line overrides.
# ============================================================================

from config.loader import ConfigError, build_run_config, load_run_config, parse_config_text
from config.settings import AppSettings, RunConfig, get_settings

__all__ = [
    "AppSettings", "RunConfig", "get_settings",
    "ConfigError", "build_run_config", "load_run_config", "parse_config_text",
]
