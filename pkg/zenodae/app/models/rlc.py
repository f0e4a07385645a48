from pydantic import BaseModel, ConfigDict, Field


class RlcParams(BaseModel):
    """Uniform N-section ladder; defaults R=0.2, L=1, C=1, G=0.05"""

    N: int = Field(..., ge=1)
    R: float = Field(0.2, gt=0)
    Lind: float = Field(1.0, gt=0)
    Ccap: float = Field(1.0, gt=0)
    Gcond: float = Field(0.05, gt=0)

    model_config = ConfigDict(frozen=True)

    @property
    def dim(self) -> int:
        return 2 * self.N + 2
