from functools import cached_property
from pydantic import BaseModel, ConfigDict, model_validator
from typing import Tuple
import numpy as np
import scipy.sparse

from ..numerics.matcore import as_matrix, dagger, null_projector


class StaggeredGrid(BaseModel):
    """
    MAC grid on [0,1]² with n cells per side.

    u1 lives at (ih, (j+½)h) for i = 1..n-1, j = 0..n-1 and u2 at ((i+½)h, jh) for
    i = 0..n-1, j = 1..n-1. Velocities are stored u1 block then u2 block, row-major
    in j; pressure is row-major over cells with cell (0,0) removed.
    """

    n: int
    h: float
    nu1: int
    nu2: int
    n_pressure: int

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_counts(self):
        n = self.n
        if (self.nu1, self.nu2, self.n_pressure) != ((n - 1) * n, n * (n - 1), n * n - 1):
            raise ValueError(f"inconsistent staggered counts for n={n}")
        return self

    @classmethod
    def for_cells(cls, n: int) -> "StaggeredGrid":
        return cls(n=n, h=1.0 / n, nu1=(n - 1) * n, nu2=n * (n - 1), n_pressure=n * n - 1)

    @property
    def n_velocity(self) -> int:
        return self.nu1 + self.nu2

    def u1_index(self, i: int, j: int) -> int:
        return j * (self.n - 1) + (i - 1)

    def u2_index(self, i: int, j: int) -> int:
        return self.nu1 + (j - 1) * self.n + i

    def locate(self, k: int) -> Tuple[str, int, int]:
        """Inverse of the velocity indexing: (component, i, j)"""
        if k < self.nu1:
            j, i = divmod(k, self.n - 1)
            return "u1", i + 1, j
        j, i = divmod(k - self.nu1, self.n)
        return "u2", i, j + 1

    def u1_points(self) -> Tuple[np.ndarray, np.ndarray]:
        x = np.arange(1, self.n) * self.h
        y = (np.arange(self.n) + 0.5) * self.h
        X, Y = np.meshgrid(x, y)
        return X.reshape(-1), Y.reshape(-1)

    def u2_points(self) -> Tuple[np.ndarray, np.ndarray]:
        x = (np.arange(self.n) + 0.5) * self.h
        y = np.arange(1, self.n) * self.h
        X, Y = np.meshgrid(x, y)
        return X.reshape(-1), Y.reshape(-1)


class StokesOperators(BaseModel):
    """
    MAC operators of one grid.

    The sparse gradient and the pinned divergence are assembled up front; the dense
    matrices are formed on first use, each bounded by dense_cap.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: StaggeredGrid
    gradient: scipy.sparse.csr_matrix
    divergence: scipy.sparse.csr_matrix
    dense_cap: int

    @property
    def n_gradient(self) -> int:
        return self.gradient.shape[0]

    @property
    def laplacian(self) -> scipy.sparse.csr_matrix:
        """Sparse Δ_h = -GhᵀGh"""
        return (-(self.gradient.T @ self.gradient)).tocsr()

    @cached_property
    def Gh(self) -> np.ndarray:
        return as_matrix(self.gradient.toarray(), size_cap=self.dense_cap)

    @cached_property
    def Dh(self) -> np.ndarray:
        return as_matrix(self.divergence.toarray(), size_cap=self.dense_cap)

    @cached_property
    def Lap(self) -> np.ndarray:
        return as_matrix(-(dagger(self.Gh) @ self.Gh), size_cap=self.dense_cap)

    @cached_property
    def PiH(self) -> np.ndarray:
        """Leray projector onto ker(Dh)"""
        return null_projector(self.Dh, size_cap=self.dense_cap)

    @cached_property
    def Sh(self) -> np.ndarray:
        Sh = -(self.PiH @ self.Lap @ self.PiH)
        return 0.5 * (Sh + dagger(Sh))

    @property
    def Bh(self) -> np.ndarray:
        """Projected Dirac operator [[0, Π_h Gh†], [Gh Π_h, 0]]"""
        GP = self.Gh @ self.PiH
        nv, ng = self.grid.n_velocity, self.n_gradient
        return np.block([
            [np.zeros((nv, nv), dtype=np.complex128), GP.conj().T],
            [GP, np.zeros((ng, ng), dtype=np.complex128)],
        ])

    @property
    def dirac(self) -> np.ndarray:
        """Unprojected block operator [[0, Gh†], [Gh, 0]]"""
        nv, ng = self.grid.n_velocity, self.n_gradient
        return np.block([
            [np.zeros((nv, nv), dtype=np.complex128), self.Gh.conj().T],
            [self.Gh, np.zeros((ng, ng), dtype=np.complex128)],
        ])

    @property
    def dirac_projector(self) -> np.ndarray:
        """diag(Π_h, I)"""
        nv, ng = self.grid.n_velocity, self.n_gradient
        P = np.zeros((nv + ng, nv + ng), dtype=np.complex128)
        P[:nv, :nv] = self.PiH
        P[nv:, nv:] = np.eye(ng)
        return P
