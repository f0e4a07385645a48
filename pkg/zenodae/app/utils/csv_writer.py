# zenodae/app/utils/csv_writer.py - Deterministic CSV tables with a metadata comment line

import csv
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List

from .. import __version__
from ..errors import OutputError
from . import format_value

logger = logging.getLogger(__name__)


def params_hash(parameters: Dict[str, Any]) -> str:
    """md5 of the canonical JSON form of the resolved parameters"""
    canonical = json.dumps(parameters, sort_keys=True, default=str)
    return hashlib.md5(canonical.encode('utf-8')).hexdigest()


def metadata_line(suite: str, seed: int, parameters: Dict[str, Any]) -> str:
    return f"# suite={suite}, version={__version__}, seed={seed}, params-hash={params_hash(parameters)}"


def write_table(
    path: Path,
    suite: str,
    seed: int,
    parameters: Dict[str, Any],
    columns: List[str],
    rows: List[Dict[str, Any]],
) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='') as f:
            f.write(metadata_line(suite, seed, parameters) + '\n')
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(row[c]) for c in columns])
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}")

    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def read_table(path: Path) -> List[Dict[str, str]]:
    """Rows of a table written by write_table, metadata line skipped"""
    try:
        with open(path, newline='') as f:
            lines = [line for line in f if not line.startswith('#')]
    except OSError as e:
        raise OutputError(f"cannot read {path}: {e}")
    return list(csv.DictReader(lines))
