from pydantic import BaseModel, ConfigDict, field_validator
from typing import Dict, List, Optional
import numpy as np

from ..numerics.matcore import as_matrix, as_vector


class ConstrainedDAE(BaseModel):
    """x' = Lx + C†λ, Cx = 0, x(0) = x0 (autonomous and homogeneous)"""

    L: np.ndarray
    C: np.ndarray
    x0: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @field_validator("L", "C", mode="before")
    @classmethod
    def coerce_matrix(cls, v):
        return as_matrix(v)

    @field_validator("x0", mode="before")
    @classmethod
    def coerce_vector(cls, v):
        return as_vector(v)

    @property
    def n(self) -> int:
        return self.L.shape[0]

    @property
    def m(self) -> int:
        return self.C.shape[0]


class ReducedSystem(BaseModel):
    generator: np.ndarray
    projector: np.ndarray
    x0: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class ValidationReport(BaseModel):
    sigma_min: Optional[float] = None
    constraint_residual: float
    checks: Dict[str, bool]
    messages: List[str] = []

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
