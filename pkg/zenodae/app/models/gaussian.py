from pydantic import BaseModel, ConfigDict
import numpy as np


class GaussianAncilla(BaseModel):
    """Discretized variance-2 Gaussian on a symmetric grid; Fq is multiplication by q"""

    Q: int
    qmax: float
    nodes: np.ndarray
    weights: np.ndarray
    g: np.ndarray
    m_max: int

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def Fq(self) -> np.ndarray:
        return np.diag(self.nodes)

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.g) ** 2


class LchsQuadrature(BaseModel):
    t: float
    Mq: int
    k: np.ndarray
    c: np.ndarray
    kmax: float

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def weight_sum(self) -> float:
        return float(np.sum(self.c))

    @property
    def weight_l1(self) -> float:
        return float(np.sum(np.abs(self.c)))
