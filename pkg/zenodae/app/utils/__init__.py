"""
Utility functions for the zeno-dae testbed
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..config import settings
from ..errors import ConfigParseError
from ..models.experiment import (
    RESERVED_KEYS,
    SUITE_PARAMETERS,
    ExperimentConfig,
    ParameterValue,
    Suite,
    ValueKind,
)


# Numeric value helpers
def parse_fraction(value: str) -> float:
    """
    Parse a decimal, exponent or fraction string into a float

    Examples:
    - "1/8" -> 0.125
    - "1e-3" -> 0.001
    - "2" -> 2.0
    """
    value = value.strip()

    try:
        if '/' not in value:
            return float(value)

        num, denom = value.split('/')
        return float(Fraction(int(num), int(denom)))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid number: {value}. Error: {e}")


def parse_count(value: str) -> int:
    value = value.strip()
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"Invalid integer: {value}")


def format_value(value: Any) -> str:
    """Render a CSV cell; floats use repr so output is exact and stable"""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def parse_value(raw: str, kind: ValueKind) -> ParameterValue:
    if kind == ValueKind.INT:
        return parse_count(raw)
    if kind == ValueKind.FLOAT:
        return parse_fraction(raw)

    items = [item for item in raw.split(',')]
    if not items or any(not item.strip() for item in items):
        raise ValueError(f"list '{raw}' has empty entries")
    parse = parse_count if kind == ValueKind.INT_LIST else parse_fraction
    return [parse(item) for item in items]


def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0].strip()


def parse_config(text: str, *, seed: Optional[int] = None) -> ExperimentConfig:
    """
    Parse line-oriented `key = value` text with `#` comments into a validated config.

    Lists are comma separated; a single value is a one-element list.
    """
    entries: Dict[str, tuple] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(line)
        if not line:
            continue
        if '=' not in line:
            raise ConfigParseError(f"expected 'key = value', got '{line}'", line=lineno)
        key, raw = (part.strip() for part in line.split('=', 1))
        if not key or not raw:
            raise ConfigParseError(f"empty key or value in '{line}'", line=lineno)
        if key in entries:
            raise ConfigParseError(f"duplicate key '{key}' (first on line {entries[key][1]})", line=lineno)
        entries[key] = (raw, lineno)

    if 'suite' not in entries:
        raise ConfigParseError("suite is required")
    raw_suite, suite_line = entries.pop('suite')
    try:
        suite = Suite(raw_suite)
    except ValueError:
        choices = ', '.join(s.value for s in Suite)
        raise ConfigParseError(f"unknown suite '{raw_suite}' (expected one of {choices})", line=suite_line)

    schema = SUITE_PARAMETERS[suite]
    parameters: Dict[str, ParameterValue] = {}
    config_seed = settings.seed if seed is None else seed
    output_path = None

    for key, (raw, lineno) in entries.items():
        if key == 'seed':
            try:
                config_seed = parse_count(raw)
            except ValueError as e:
                raise ConfigParseError(str(e), line=lineno)
            continue
        if key == 'output':
            output_path = raw
            continue
        if key not in schema:
            allowed = ', '.join(sorted(list(schema) + list(RESERVED_KEYS)))
            raise ConfigParseError(f"unknown key '{key}' for suite {suite.value} (allowed: {allowed})", line=lineno)
        kind, _ = schema[key]
        try:
            parameters[key] = parse_value(raw, kind)
        except ValueError as e:
            raise ConfigParseError(f"{key}: {e}", line=lineno)

    return ExperimentConfig(suite=suite, parameters=parameters, seed=config_seed, output_path=output_path)


def sort_rows(rows: List[Dict[str, Any]], keys: List[str]) -> List[Dict[str, Any]]:
    return sorted(rows, key=lambda row: tuple(row[k] for k in keys))


__all__ = [
    'parse_fraction',
    'parse_count',
    'parse_value',
    'parse_config',
    'format_value',
    'sort_rows',
]
