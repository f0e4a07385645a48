from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Optional


class Verdict(str, Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"


class CostInputs(BaseModel):
    """
    Symbols of the complexity statements. Normalizations default to the measured
    2D MAC scalings alphaH = 8h⁻² and alphaD = 4h⁻¹.
    """

    t: float = Field(..., gt=0)
    eps: float = Field(..., gt=0, lt=1)
    h: float = Field(..., gt=0)
    d: int = 2
    alphaH: Optional[float] = Field(None, gt=0)
    alphaD: Optional[float] = Field(None, gt=0)
    gamma: float = Field(1.0, gt=0)
    TH: float = Field(1.0, gt=0)
    TG: float = Field(1.0, gt=0)
    TD: float = Field(1.0, gt=0)
    chi: float = Field(1.0, gt=0)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def fill_normalizations(self):
        if self.alphaH is None:
            object.__setattr__(self, "alphaH", 8.0 / self.h ** 2)
        if self.alphaD is None:
            object.__setattr__(self, "alphaD", 4.0 / self.h)
        return self


class CostBreakdown(BaseModel):
    h: float
    t: float
    eps: float
    d: int
    chi: float
    p_degree: int
    direct_queries: float
    direct_gates: float
    gz_gates: float
    gz_prep: float
    classical: float
    verdict: Verdict
