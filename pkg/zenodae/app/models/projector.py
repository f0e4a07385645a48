from pydantic import BaseModel, ConfigDict, Field, model_validator


class PolyProjectorSpec(BaseModel):
    alpha: float = Field(..., gt=0)
    gamma: float = Field(..., gt=0)
    eps: float = Field(..., gt=0, lt=1)
    degree: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_gap(self):
        if self.gamma > self.alpha:
            raise ValueError(f"gap {self.gamma} exceeds normalization {self.alpha}")
        return self

    @property
    def relative_gap(self) -> float:
        return self.gamma / self.alpha
