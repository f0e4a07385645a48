# zenodae/app/numerics/daemodel.py - Constrained linear DAEs, Schur reduction and the reference solution

import logging
from typing import Optional

import numpy as np

from ..config import settings
from ..errors import ConsistencyError, DaeIndexError, ParameterError, RankError, StructureError
from ..models.dae import ConstrainedDAE, ReducedSystem, ValidationReport
from .matcore import ComplexVector, as_matrix, as_vector, dagger, matexp, null_projector, singular_values

logger = logging.getLogger(__name__)


def make_dae(L, C, x0, *, projection_tol: Optional[float] = None) -> ConstrainedDAE:
    """
    Build a DAE, projecting approximately consistent initial data onto ker(C).

    Data with ‖Cx0‖ above projection_tol is rejected.
    """
    projection_tol = settings.projection_tol if projection_tol is None else projection_tol
    L = as_matrix(L)
    C = as_matrix(C) if np.size(C) else np.zeros((0, L.shape[0]), dtype=np.complex128)
    x0 = as_vector(x0)

    if L.shape[0] != L.shape[1]:
        raise ParameterError(f"generator must be square, got {L.shape}")
    if C.shape[1] != L.shape[0] or x0.size != L.shape[0]:
        raise ParameterError(f"dimension mismatch: L {L.shape}, C {C.shape}, x0 ({x0.size},)")

    residual = float(np.linalg.norm(C @ x0)) if C.shape[0] else 0.0
    if residual > projection_tol:
        raise ConsistencyError(f"inconsistent initial data: ‖Cx0‖ = {residual:.3e}")
    if residual > settings.consistency_tol:
        logger.warning(f"projecting initial data onto ker(C) (‖Cx0‖ = {residual:.2e})")
        x0 = null_projector(C) @ x0

    return ConstrainedDAE(L=L, C=C, x0=x0)


def random_dae(n: int, m: int, seed: Optional[int] = None, *, norm: float = 1.0) -> ConstrainedDAE:
    """Seeded complex test DAE with ‖L‖ = norm, Gaussian C and unit x0 in ker(C)"""
    if not 0 <= m < n:
        raise ParameterError(f"need 0 <= m < n, got n={n}, m={m}")
    seed = settings.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    L = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    L *= norm / np.linalg.norm(L, 2)
    C = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    x0 = null_projector(C) @ (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return make_dae(L, C, x0 / np.linalg.norm(x0))


def validate(dae: ConstrainedDAE) -> ValidationReport:
    """Diagnose the standing assumptions: full row rank and x0 ∈ ker(C)"""
    messages = []
    sigma = singular_values(dae.C)
    sigma_min = float(sigma[-1]) if sigma.size else None

    if dae.m == 0:
        full_rank = True
    else:
        full_rank = dae.m <= dae.n and sigma.size == dae.m and sigma_min > settings.rank_tol
    if not full_rank:
        messages.append(f"rank-deficient constraint (σ_min = {sigma_min:.3e})")

    residual = float(np.linalg.norm(dae.C @ dae.x0)) if dae.m else 0.0
    consistent = residual <= settings.consistency_tol
    if not consistent:
        messages.append(f"inconsistent initial data (‖Cx0‖ = {residual:.3e})")

    return ValidationReport(
        sigma_min=sigma_min,
        constraint_residual=residual,
        checks={"full_row_rank": full_rank, "consistent_initial_data": consistent},
        messages=messages,
    )


def ensure_valid(dae: ConstrainedDAE) -> None:
    report = validate(dae)
    if not report.checks["full_row_rank"]:
        raise RankError(report.messages[0])
    if not report.checks["consistent_initial_data"]:
        raise ConsistencyError(report.messages[-1])


def from_semi_explicit(L, G, C, x0, *, tol: Optional[float] = None) -> ConstrainedDAE:
    """
    Rewrite x' = Lx + Gμ, Cx = 0 with Range(G) = Range(C†) in the C†λ form.

    The multiplier is absorbed through λ = (CC†)^{-1}CGμ, so the generator and
    constraint are unchanged.
    """
    tol = settings.rank_tol if tol is None else tol
    C = as_matrix(C)
    G = as_matrix(G)
    if G.shape != (C.shape[1], C.shape[0]):
        raise StructureError(f"G must have shape {(C.shape[1], C.shape[0])}, got {G.shape}")

    Pi = null_projector(C)
    leak = float(np.linalg.norm(Pi @ G))
    if leak > tol:
        raise StructureError(f"Range(G) is not contained in Range(C†): ‖ΠG‖ = {leak:.3e}")

    CG = C @ G
    sigma = singular_values(CG)
    if sigma.size == 0 or sigma[-1] <= settings.rank_tol:
        raise DaeIndexError("CG is singular; the multiplier cannot be eliminated")

    logger.debug(f"semi-explicit multiplier map conditioned at {sigma[0] / sigma[-1]:.2e}")
    return make_dae(L, C, x0)


def from_index1(A11, A12, A21, A22, x0) -> ConstrainedDAE:
    """
    Index-1 block system [I 0; 0 0]x' = [A11 A12; A21 A22]x in constrained form.

    L = [[A11, A12], [-A22⁻¹A21A11, -A22⁻¹A21A12]], C = [A21, A22]; CL = 0 so the
    multiplier vanishes identically.
    """
    A11, A12, A21, A22 = (np.atleast_2d(np.asarray(a, dtype=np.complex128)) for a in (A11, A12, A21, A22))
    sigma = singular_values(A22)
    if A22.shape[0] != A22.shape[1] or sigma.size == 0 or sigma[-1] <= settings.rank_tol:
        raise DaeIndexError("A22 is singular; the system is not index 1 in this presentation")

    coupling = np.linalg.solve(A22, A21)
    L = np.block([[A11, A12], [-coupling @ A11, -coupling @ A12]])
    C = np.hstack([A21, A22])

    dae = make_dae(L, C, x0)
    residual = float(np.linalg.norm(C @ L))
    if residual > 1e-10 * max(1.0, float(np.linalg.norm(L))):
        logger.warning(f"index-1 rewrite has ‖CL‖ = {residual:.2e}")
    return dae


def schur_reduce(dae: ConstrainedDAE) -> ReducedSystem:
    ensure_valid(dae)
    Pi = null_projector(dae.C)
    generator = Pi @ dae.L @ Pi
    generator.flags.writeable = False
    return ReducedSystem(generator=generator, projector=Pi, x0=dae.x0)


def reference_solve(red: ReducedSystem, t: float) -> ComplexVector:
    """x(t) = exp(tΠLΠ)x0"""
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    return matexp(t * red.generator) @ red.x0


def restart(red: ReducedSystem, x: ComplexVector) -> ReducedSystem:
    return ReducedSystem(generator=red.generator, projector=red.projector, x0=as_vector(x))


def recover_multiplier(dae: ConstrainedDAE, x) -> ComplexVector:
    """λ = -(CC†)^{-1}CLx, the multiplier keeping Lx + C†λ in ker(C)"""
    x = np.asarray(x, dtype=np.complex128)
    if dae.m == 0:
        return np.zeros(0, dtype=np.complex128)
    residual = float(np.linalg.norm(dae.C @ x))
    if residual > settings.projection_tol:
        raise ConsistencyError(f"state leaves ker(C): ‖Cx‖ = {residual:.3e}")

    C = dae.C
    lam = -np.linalg.solve(C @ dagger(C), C @ (dae.L @ x))
    defect = float(np.linalg.norm(C @ (dae.L @ x + dagger(C) @ lam)))
    if defect > 1e-8 * max(1.0, float(np.linalg.norm(dae.L @ x))):
        logger.warning(f"multiplier leaves a constraint defect {defect:.2e}")
    return lam
