from pydantic import BaseModel, Field
from typing import Optional, List
from datetime import datetime
from enum import Enum


class FailureSeverity(str, Enum):
    CRITICAL = "critical"
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


class FailureDetails(BaseModel):
    error_message: str
    error_type: str
    stack_trace: Optional[str] = None


class FailureReport(BaseModel):
    """Machine-readable summary of a failed suite run, one JSON line on stderr"""

    title: str
    suite: str
    exit_code: int
    severity: FailureSeverity = FailureSeverity.HIGH
    details: FailureDetails
    elapsed_seconds: float = 0.0
    tags: List[str] = []
    timestamp: datetime = Field(default_factory=datetime.now)
