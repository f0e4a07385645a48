import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..config import settings
from ..errors import ConfigParseError, InvariantViolation, OutputError, ParameterError, TestbedError
from ..models.experiment import SUITE_COLUMNS, Suite
from ..utils import sort_rows

logger = logging.getLogger(__name__)


def require(condition: bool, message: str) -> None:
    """Raise InvariantViolation with message unless condition holds"""
    if not condition:
        logger.error(f"Invariant violated: {message}")
        raise InvariantViolation(message)


class SuiteTool:
    """Sweep runner shared by the suite tools; subclasses supply points and per-point rows"""

    suite: Suite
    sort_keys: List[str] = []

    def __init__(self):
        self.name = self.suite.value
        self.description = ""

    @property
    def columns(self) -> List[str]:
        return SUITE_COLUMNS[self.suite]

    def points(self, params: Dict[str, Any]) -> List[Any]:
        raise NotImplementedError

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        raise NotImplementedError

    def finalize(self, rows: List[Dict[str, Any]], params: Dict[str, Any]) -> List[Dict[str, Any]]:
        return rows

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        pass

    def dump_operators(self, params: Dict[str, Any], out_dir: Path) -> List[Path]:
        return []

    def execute(self, params: Dict[str, Any], seed: int, threads: int = 1) -> List[Dict[str, Any]]:
        """Run every sweep point, sort by the sweep key and re-assert the suite invariants"""
        points = self.points(params)
        if not points:
            raise ConfigParseError(f"suite {self.name} has an empty sweep")

        logger.info(f"Running {self.name} suite over {len(points)} points with {threads} thread(s)")
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            chunks = list(pool.map(lambda p: self.run_point(p, params, seed), points))

        rows = sort_rows([row for chunk in chunks for row in chunk], self.sort_keys)
        rows = self.finalize(rows, params)
        self.check(rows, params, seed)
        logger.info(f"{self.name} suite passed with {len(rows)} rows")
        return rows
