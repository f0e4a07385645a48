import sys
import traceback
import logging
import time
from typing import Callable, Optional, TextIO, TypeVar

from ..config import settings
from ..errors import CapacityError, ConfigParseError, InvariantViolation, OutputError, TestbedError
from ..models.violation import FailureDetails, FailureReport, FailureSeverity

logger = logging.getLogger(__name__)

T = TypeVar("T")

UNEXPECTED_EXIT_CODE = 1


class InvariantTrackingMiddleware:
    """
    Wraps a suite run: failures become a FailureReport logged and written as one
    JSON line to the sink, slow runs are flagged.
    """

    def __init__(self, track_performance: bool = True, sink: Optional[TextIO] = None):
        self.track_performance = track_performance
        self.performance_threshold = settings.slow_run_seconds
        self.sink = sink
        self.last_report: Optional[FailureReport] = None

    def dispatch(self, suite: str, call_next: Callable[[], T]) -> T:
        start_time = time.time()
        error_occurred = False
        self.last_report = None

        try:
            return call_next()

        except TestbedError as e:
            error_occurred = True
            self._log_failure(suite, e, self._severity(e), e.exit_code, time.time() - start_time)
            raise

        except Exception as e:
            logger.error(f"Unhandled error in suite {suite}: {str(e)}")
            error_occurred = True
            self._log_failure(suite, e, FailureSeverity.CRITICAL, UNEXPECTED_EXIT_CODE, time.time() - start_time)
            raise

        finally:
            elapsed = time.time() - start_time
            if self.track_performance and not error_occurred and elapsed > self.performance_threshold:
                logger.warning(f"Slow suite run: {suite} took {elapsed:.1f}s (threshold {self.performance_threshold:.0f}s)")

    @staticmethod
    def _severity(error: TestbedError) -> FailureSeverity:
        if isinstance(error, InvariantViolation):
            return FailureSeverity.HIGH
        if isinstance(error, (CapacityError, OutputError)):
            return FailureSeverity.MEDIUM
        if isinstance(error, ConfigParseError):
            return FailureSeverity.LOW
        return FailureSeverity.HIGH

    def _log_failure(self, suite: str, error: Exception, severity: FailureSeverity, exit_code: int, elapsed: float):
        details = FailureDetails(
            error_message=str(error),
            error_type=type(error).__name__,
            stack_trace=traceback.format_exc() if severity == FailureSeverity.CRITICAL else None,
        )
        report = FailureReport(
            title=f"{type(error).__name__}: {str(error)[:100]}",
            suite=suite,
            exit_code=exit_code,
            severity=severity,
            details=details,
            elapsed_seconds=round(elapsed, 3),
            tags=["suite-run", suite, type(error).__name__.lower()],
        )
        self.last_report = report
        logger.error(f"Suite failure logged: {report.title}")

        sink = self.sink or sys.stderr
        try:
            sink.write(report.model_dump_json() + "\n")
            sink.flush()
        except Exception as e:
            logger.error(f"Failed to emit failure report: {e}")
