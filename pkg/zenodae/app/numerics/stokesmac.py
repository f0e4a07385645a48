# zenodae/app/numerics/stokesmac.py - MAC staggered-grid Stokes system as a constrained DAE

import logging
from typing import Optional, TextIO

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from ..config import settings
from ..errors import CapacityError, OutputError, ParameterError, RankError, ShapeError
from ..models.dae import ConstrainedDAE
from ..models.stokes import StaggeredGrid, StokesOperators
from . import daemodel
from .matcore import ComplexVector, dagger, matexp, singular_values

logger = logging.getLogger(__name__)

MAX_CELLS = 64

# dense limit for the MAC operators: the gradient of the finest grid has 4n² - 2 rows
DENSE_CAP = 4 * MAX_CELLS * MAX_CELLS


def _difference(m: int, h: float) -> scipy.sparse.csr_matrix:
    """(m+1)×m forward difference (u_k - u_{k-1})/h with zero values beyond both ends"""
    eye = scipy.sparse.eye(m + 1, m, format="csr")
    shifted = scipy.sparse.eye(m + 1, m, k=-1, format="csr")
    return ((eye - shifted) / h).tocsr()


def _gradient(grid: StaggeredGrid) -> scipy.sparse.csr_matrix:
    n, h = grid.n, grid.h
    eye_n = scipy.sparse.identity(n, format="csr")
    eye_m = scipy.sparse.identity(n - 1, format="csr")
    d_normal = _difference(n - 1, h)
    d_tangential = _difference(n, h)
    g_u1 = scipy.sparse.vstack([scipy.sparse.kron(eye_n, d_normal), scipy.sparse.kron(d_tangential, eye_m)])
    g_u2 = scipy.sparse.vstack([scipy.sparse.kron(eye_m, d_tangential), scipy.sparse.kron(d_normal, eye_n)])
    return scipy.sparse.block_diag([g_u1, g_u2], format="csr")


def _divergence(grid: StaggeredGrid) -> scipy.sparse.csr_matrix:
    """Cell-centered divergence over all n² cells"""
    n, h = grid.n, grid.h
    d_normal = _difference(n - 1, h)
    return scipy.sparse.hstack([
        scipy.sparse.kron(scipy.sparse.identity(n), d_normal),
        scipy.sparse.kron(d_normal, scipy.sparse.identity(n)),
    ], format="csr")


def build_grid(n: int) -> StaggeredGrid:
    if n < 2:
        raise ParameterError(f"MAC grid needs n >= 2, got {n}")
    if n > MAX_CELLS:
        raise CapacityError(f"n = {n} exceeds the MAC grid limit {MAX_CELLS}")
    return StaggeredGrid.for_cells(n)


def _require_full_row_rank(divergence: scipy.sparse.csr_matrix) -> None:
    """The pinned pressure Laplacian DhDhᵀ must factor without a zero pivot"""
    try:
        scipy.sparse.linalg.splu((divergence @ divergence.T).tocsc())
    except RuntimeError as e:
        raise RankError(f"pinned divergence is rank deficient: {e}")


def build_operators(n: int) -> StokesOperators:
    """
    Gradient-first MAC operators.

    Gh and the pinned Dh are assembled sparse; the dense matrices, including
    Lap = -Gh†Gh, Π_h and Sh, are formed when first used. The pressure row of
    cell (0,0) is dropped from Dh to give full row rank.
    """
    grid = build_grid(n)
    gradient = scipy.sparse.csr_matrix(_gradient(grid))
    divergence = scipy.sparse.csr_matrix(_divergence(grid)[1:, :])
    _require_full_row_rank(divergence)

    logger.debug(
        f"MAC n={n}: {grid.n_velocity} velocity, {grid.n_pressure} pressure, {gradient.shape[0]} gradient unknowns"
    )
    return StokesOperators(grid=grid, gradient=gradient, divergence=divergence, dense_cap=DENSE_CAP)


def _largest_eigenvalue(a: scipy.sparse.spmatrix) -> float:
    values = scipy.sparse.linalg.eigsh(a.astype(float), k=1, which="LM", return_eigenvectors=False, tol=1e-10)
    return float(abs(values[0]))


def operator_norms(ops: StokesOperators) -> dict:
    """h²‖Lap‖, h‖Gh‖ and h‖Dh‖ from the sparse operators; usable up to MAX_CELLS"""
    h = ops.grid.h
    lap = _largest_eigenvalue(ops.laplacian)
    return {
        "lap_h2": lap * h ** 2,
        "grad_h": float(np.sqrt(lap)) * h,
        "div_h": float(np.sqrt(_largest_eigenvalue(ops.divergence @ ops.divergence.T))) * h,
    }


def scaling_report(ops: StokesOperators) -> dict:
    """Operator norms scaled by their expected powers of h"""
    h = ops.grid.h
    return {
        "lap_h2": float(np.linalg.norm(ops.Lap, 2)) * h ** 2,
        "grad_h": float(np.linalg.norm(ops.Gh, 2)) * h,
        "div_h": float(np.linalg.norm(ops.Dh, 2)) * h,
        "dirac_h": float(np.linalg.norm(ops.Bh, 2)) * h,
        "reduced_h2": float(np.linalg.norm(ops.Sh, 2)) * h ** 2,
    }


def factorization_defects(ops: StokesOperators) -> dict:
    """Relative defects of Sh = (GhΠ)†(GhΠ) and of the block-diagonal Bh²"""
    nv = ops.grid.n_velocity
    GP = ops.Gh @ ops.PiH
    scale = max(1.0, float(np.linalg.norm(ops.Sh)))
    Bh = ops.Bh
    square = Bh @ Bh
    return {
        "factorization": float(np.linalg.norm(ops.Sh - dagger(GP) @ GP)) / scale,
        "upper_left": float(np.linalg.norm(square[:nv, :nv] - ops.Sh)) / scale,
        "lower_right": float(np.linalg.norm(square[nv:, nv:] - GP @ dagger(GP))) / scale,
        "off_diagonal": float(np.linalg.norm(square[:nv, nv:])) / scale,
    }


def assemble_stokes_dae(ops: StokesOperators, u0) -> ConstrainedDAE:
    u0 = np.asarray(u0, dtype=np.complex128).reshape(-1)
    if u0.size != ops.grid.n_velocity:
        raise ShapeError(f"velocity must have {ops.grid.n_velocity} entries, got {u0.size}")
    return daemodel.make_dae(ops.Lap, ops.Dh, ops.PiH @ u0)


def taylor_green_init(grid: StaggeredGrid) -> ComplexVector:
    """u0 = (-π sin²(πx) sin(2πy), π sin²(πy) sin(2πx)) at the staggered points"""
    x1, y1 = grid.u1_points()
    x2, y2 = grid.u2_points()
    u1 = -np.pi * np.sin(np.pi * x1) ** 2 * np.sin(2 * np.pi * y1)
    u2 = np.pi * np.sin(np.pi * y2) ** 2 * np.sin(2 * np.pi * x2)
    return np.concatenate([u1, u2]).astype(np.complex128)


def divergence_residual(ops: StokesOperators, u) -> float:
    return float(np.max(np.abs(ops.Dh @ np.asarray(u)))) if ops.Dh.size else 0.0


def reduced_evolve(ops: StokesOperators, u0, t: float) -> ComplexVector:
    """u(t) = exp(-tSh)Π_h u0"""
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    return matexp(-t * ops.Sh, size_cap=ops.dense_cap) @ (ops.PiH @ np.asarray(u0, dtype=np.complex128))


def recover_pressure(ops: StokesOperators, u) -> np.ndarray:
    """Cell pressure (row-major, all n² cells) of velocity u, shifted to zero mean"""
    dae = assemble_stokes_dae(ops, u)
    pinned = daemodel.recover_multiplier(dae, np.asarray(u, dtype=np.complex128))
    p = np.concatenate([[0.0], pinned.real])
    return p - p.mean()


def inf_sup_constant(n: int) -> float:
    """Smallest nonzero singular value of the unpinned divergence"""
    grid = build_grid(n)
    sigma = singular_values(_divergence(grid).toarray())
    positive = sigma[sigma > settings.rank_tol * max(1.0, sigma[0])]
    return float(positive[-1])


def dump_operator(name: str, matrix, stream: TextIO, *, drop_tol: Optional[float] = None, **labels) -> int:
    """
    Write a (row, col, re, im) triple list under a one-line header; returns the entry count.

    The header names the operator, then each label as key=repr(value), then the shape.
    """
    drop_tol = 0.0 if drop_tol is None else drop_tol
    if scipy.sparse.issparse(matrix):
        coo = scipy.sparse.coo_matrix(matrix)
        keep = np.abs(coo.data) > drop_tol
        coo = scipy.sparse.coo_matrix((coo.data[keep], (coo.row[keep], coo.col[keep])), shape=coo.shape)
    else:
        matrix = np.asarray(matrix)
        coo = scipy.sparse.coo_matrix(np.where(np.abs(matrix) > drop_tol, matrix, 0))
    header = [f"operator={name}"] + [f"{key}={value!r}" for key, value in labels.items()]
    header.append(f"shape={coo.shape[0]}x{coo.shape[1]}")
    try:
        stream.write("% " + " ".join(header) + "\n")
        for row, col, value in zip(coo.row, coo.col, coo.data):
            value = complex(value)
            stream.write(f"{row} {col} {value.real!r} {value.imag!r}\n")
    except OSError as e:
        raise OutputError(f"failed to write operator {name}: {e}")
    return int(coo.nnz)
