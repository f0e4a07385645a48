# zenodae/app/errors.py - Error types shared by the numerics, suites and CLI

from typing import Optional


class TestbedError(Exception):
    """Base error; carries a human-readable detail and the process exit code"""

    exit_code: int = 3
    __test__ = False

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ShapeError(TestbedError):
    pass


class CapacityError(TestbedError):
    exit_code = 4


class RankError(TestbedError):
    pass


class ParameterError(TestbedError):
    pass


class StructureError(TestbedError):
    pass


class DaeIndexError(TestbedError):
    pass


class ConsistencyError(TestbedError):
    pass


class GapViolationError(TestbedError):
    pass


class InvariantViolation(TestbedError):
    exit_code = 3


class OutputError(TestbedError):
    exit_code = 5


class ConfigParseError(TestbedError):
    exit_code = 2

    def __init__(self, detail: str, line: Optional[int] = None):
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}{detail}")
        self.line = line
