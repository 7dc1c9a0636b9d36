"""
============================================================================
CSV Export
============================================================================
Deterministic CSV writing: comma separator, '.' decimal point, header row,
17 significant digits, '\\n' line endings. Identical frames produce
byte-identical files.
============================================================================
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Mapping, Optional, Sequence

import pandas as pd

from config.loader import ConfigError
from utils.helpers import SIGNIFICANT_DIGITS

logger = logging.getLogger(__name__)

FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


def to_csv_text(df: pd.DataFrame) -> str:
    """Render a DataFrame as deterministic CSV text."""
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_csv(df: pd.DataFrame, path: Optional[Path | str]) -> str:
    """
    Write ``df`` to ``path``, or to stdout when path is None or '-'.

    Returns:
        The CSV text that was written.

    Raises:
        ConfigError: the destination cannot be created or written.
    """
    text = to_csv_text(df)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return text
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output ({exc.strerror or exc})", path=str(target), field="output.path") from exc
    logger.info("Wrote %d rows to %s", len(df), target)
    return text


def summary_frame(record: Mapping[str, object], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """One-row frame from a summary record, keeping key order."""
    columns = list(columns) if columns is not None else list(record.keys())
    return pd.DataFrame([{c: record[c] for c in columns}], columns=columns)
