from pydantic import BaseModel, ConfigDict
from typing import List
import numpy as np

from ..numerics.matcore import kron


class MomentAncilla(BaseModel):
    """Truncated moment-matching pair (⟨l|, |r⟩, θF) on an (M+1)-point grid"""

    M: int
    delta: float
    F: np.ndarray
    theta: float = 0.5
    r: np.ndarray
    l: np.ndarray
    jstar: int
    exact_order: int
    moment_errors: List[float] = []
    profile: str = "eigen"

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def dim(self) -> int:
        return self.M + 1

    @property
    def nominal_order(self) -> int:
        return self.M - self.jstar - 1

    @property
    def scaled_F(self) -> np.ndarray:
        return self.theta * self.F


class DilatedSystem(BaseModel):
    """
    Dilated system kept in Kronecker-factored form.

    Ĥ = I⊗H + iA⊗K with A = θF, D = I⊗C, P = I⊗Π; the dense tensors are
    assembled on request and are subject to the size cap.
    """

    H: np.ndarray
    K: np.ndarray
    C: np.ndarray
    Pi: np.ndarray
    A: np.ndarray
    psi0: np.ndarray
    ancilla_dim: int

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    def n(self) -> int:
        return self.H.shape[0]

    @property
    def dim(self) -> int:
        return self.ancilla_dim * self.n

    @property
    def Hhat(self) -> np.ndarray:
        return kron(np.eye(self.ancilla_dim), self.H) + 1j * kron(self.A, self.K)

    @property
    def D(self) -> np.ndarray:
        return kron(np.eye(self.ancilla_dim), self.C)

    @property
    def P(self) -> np.ndarray:
        return kron(np.eye(self.ancilla_dim), self.Pi)
