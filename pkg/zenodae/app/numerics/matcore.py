# zenodae/app/numerics/matcore.py - Dense complex linear algebra shared by every module

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..config import settings
from ..errors import CapacityError, RankError, ShapeError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _check_cap(*dims: int, size_cap: Optional[int] = None) -> None:
    cap = size_cap or settings.size_cap
    for dim in dims:
        if dim > cap:
            raise CapacityError(f"dimension {dim} exceeds the dense size cap {cap}")


def as_matrix(a, *, size_cap: Optional[int] = None) -> ComplexMatrix:
    """Coerce to a read-only complex128 2-D array; 1-D input becomes a single row"""
    arr = np.array(a, dtype=np.complex128, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ShapeError(f"expected a matrix, got an array with {arr.ndim} dimensions")
    if not np.all(np.isfinite(arr)):
        raise ShapeError("matrix has non-finite entries")
    _check_cap(*arr.shape, size_cap=size_cap)
    return _frozen(arr)


def as_vector(v, *, size_cap: Optional[int] = None) -> ComplexVector:
    arr = np.array(v, dtype=np.complex128, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ShapeError("vector has non-finite entries")
    _check_cap(arr.size, size_cap=size_cap)
    return _frozen(arr)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def require_square(a: np.ndarray, name: str = "matrix") -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - dagger(a)))


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return a.ndim == 2 and a.shape[0] == a.shape[1] and hermiticity_defect(a) <= tol


def kron(a, b, *, size_cap: Optional[int] = None) -> ComplexMatrix:
    """Kronecker product a⊗b with dims (a.rows·b.rows, a.cols·b.cols)"""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError("kron expects two matrices")
    _check_cap(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1], size_cap=size_cap)
    return _frozen(np.kron(a, b))


def matexp(a, *, size_cap: Optional[int] = None) -> ComplexMatrix:
    """
    Matrix exponential by scaling and squaring with a Padé approximant.

    Skew-Hermitian generators must give a unitary result; drift beyond tol_exp
    (relative, Frobenius) is logged.
    """
    a = np.asarray(a, dtype=np.complex128)
    require_square(a)
    _check_cap(a.shape[0], size_cap=size_cap)
    n = a.shape[0]
    if n == 0:
        return _frozen(np.zeros((0, 0), dtype=np.complex128))
    result = scipy.linalg.expm(a)

    scale = max(1.0, float(np.linalg.norm(a)))
    if float(np.linalg.norm(a + dagger(a))) <= settings.tol_exp * scale:
        drift = unitarity_defect(result)
        if drift > settings.tol_exp * scale:
            logger.warning(f"exponential of a skew-Hermitian {n}x{n} generator drifts from unitary by {drift:.2e}")
    return _frozen(result)


def unitarity_defect(u) -> float:
    """‖UU† − I‖_F / √n"""
    u = np.asarray(u, dtype=np.complex128)
    require_square(u)
    n = u.shape[0]
    return float(np.linalg.norm(u @ dagger(u) - np.eye(n))) / np.sqrt(n) if n else 0.0


def singular_values(c) -> np.ndarray:
    c = np.asarray(c, dtype=np.complex128)
    if c.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(c)


def null_projector(c, *, rank_tol: Optional[float] = None, size_cap: Optional[int] = None) -> ComplexMatrix:
    """
    Orthogonal projector onto ker(c).

    Built from the SVD of c and cross-checked against I - c†(cc†)^{-1}c.
    An empty (0×n) c yields the identity.
    """
    rank_tol = settings.rank_tol if rank_tol is None else rank_tol
    c = np.atleast_2d(np.asarray(c, dtype=np.complex128))
    m, n = c.shape
    _check_cap(n, size_cap=size_cap)
    if m == 0:
        return _frozen(np.eye(n, dtype=np.complex128))
    if m > n:
        raise RankError(f"constraint has {m} rows but only {n} columns; full row rank impossible")

    _, sigma, vh = scipy.linalg.svd(c, full_matrices=True)
    if sigma[-1] <= rank_tol:
        raise RankError(
            f"constraint is rank deficient: smallest singular value {sigma[-1]:.3e} <= rank_tol {rank_tol:.1e}"
        )

    kernel = dagger(vh[m:, :])
    projector = kernel @ dagger(kernel)
    projector = 0.5 * (projector + dagger(projector))

    normal_form = np.eye(n) - dagger(c) @ np.linalg.solve(c @ dagger(c), c)
    mismatch = float(np.linalg.norm(projector - normal_form))
    if mismatch > 1e-8:
        logger.warning(
            f"kernel projector differs from the normal-equation formula by {mismatch:.2e} "
            f"(cond(c) = {sigma[0] / sigma[-1]:.2e})"
        )
    return _frozen(projector)


def projector_defects(p: np.ndarray, c: Optional[np.ndarray] = None) -> dict:
    """Frobenius defects ‖P−P†‖, ‖P²−P‖ and, when c is given, ‖cP‖"""
    defects = {
        "hermitian": hermiticity_defect(p),
        "idempotent": float(np.linalg.norm(p @ p - p)),
    }
    if c is not None:
        c = np.atleast_2d(np.asarray(c, dtype=np.complex128))
        defects["annihilates"] = float(np.linalg.norm(c @ p)) if c.size else 0.0
    return defects
