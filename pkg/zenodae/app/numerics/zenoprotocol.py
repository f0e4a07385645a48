# zenodae/app/numerics/zenoprotocol.py - Repeated-projection product and polynomial projector surrogate

import logging
import math
from typing import Dict, List, Optional

import numpy as np
import scipy.linalg
from numpy.polynomial import Chebyshev

from ..config import settings
from ..errors import GapViolationError, ParameterError
from ..models.dilation import DilatedSystem
from ..models.projector import PolyProjectorSpec
from .matcore import ComplexMatrix, ComplexVector, dagger, matexp
from .momentdilation import evolve_dilated

logger = logging.getLogger(__name__)

# relative gap is clipped here so the affine map stays defined when gamma == alpha
_GAP_CEILING = 1.0 - 1e-6


def zeno_product(sys: DilatedSystem, t: float, N: int) -> ComplexVector:
    """(P e^{-itĤ/N} P)^N Ψ0"""
    if N < 1:
        raise ParameterError(f"Zeno product needs N >= 1, got {N}")
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    P = sys.P
    step = P @ matexp(-1j * (t / N) * sys.Hhat) @ P
    psi = np.array(sys.psi0)
    for _ in range(N):
        psi = step @ psi
    return psi


def zeno_error_sweep(sys: DilatedSystem, t: float, Ns: List[int]) -> List[Dict[str, float]]:
    """Zeno product error against exp(-itPĤP)Ψ0, with the ratio to the next N"""
    exact = evolve_dilated(sys, t)
    errors = [float(np.linalg.norm(zeno_product(sys, t, N) - exact)) for N in Ns]
    rows = []
    for i, N in enumerate(Ns):
        ratio = errors[i] / errors[i + 1] if i + 1 < len(errors) and errors[i + 1] > 0 else float("nan")
        rows.append({"N": N, "err": errors[i], "ratio": ratio})
    return rows


def empirical_order(Ns: List[int], errors: List[float]) -> float:
    """Negated log-log slope of error against N"""
    slope, _ = np.polyfit(np.log(np.asarray(Ns, dtype=float)), np.log(np.asarray(errors)), 1)
    return float(-slope)


def poly_projector_degree(alpha: float, gamma: float, eps: float) -> int:
    """q = ceil((α/γ)·ln(2/ε)) + 1"""
    if not (alpha > 0 and gamma > 0 and gamma <= alpha):
        raise ParameterError(f"need 0 < gamma <= alpha, got alpha={alpha}, gamma={gamma}")
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    return int(math.ceil((alpha / gamma) * math.log(2.0 / eps))) + 1


def make_spec(alpha: float, gamma: float, eps: float, degree: Optional[int] = None) -> PolyProjectorSpec:
    q = poly_projector_degree(alpha, gamma, eps) if degree is None else degree
    if q < 1:
        raise ParameterError(f"degree must be positive, got {q}")
    return PolyProjectorSpec(alpha=alpha, gamma=gamma, eps=eps, degree=q)


def _affine(relative_gap: float):
    g2 = min(relative_gap, _GAP_CEILING) ** 2
    return lambda y: (1.0 + g2 - 2.0 * y) / (1.0 - g2)


def filter_polynomial(x, relative_gap: float, degree: int) -> np.ndarray:
    """
    p(x) = T_q(s(x²)) / T_q(s(0)).

    s maps [γ̃², 1] onto [-1, 1] and 0 to s(0) > 1, so p(0) = 1 and |p| <= 1/T_q(s(0))
    on [γ̃, 1].
    """
    s = _affine(relative_gap)
    T = Chebyshev.basis(degree)
    x = np.asarray(x, dtype=float)
    return T(s(x ** 2)) / T(s(0.0))


def filter_sup(relative_gap: float, degree: int) -> float:
    """Exact sup of |p| on [γ̃, 1]: 1/T_q(s(0)) = 1/cosh(q·acosh(s(0)))"""
    s0 = _affine(relative_gap)(0.0)
    return 1.0 / math.cosh(degree * math.acosh(s0))


def minimal_degree(relative_gap: float, eps: float, q_max: int = 100000) -> int:
    s0 = _affine(relative_gap)(0.0)
    q = max(1, int(math.ceil(math.acosh(1.0 / eps) / math.acosh(s0))))
    while q > 1 and 1.0 / math.cosh((q - 1) * math.acosh(s0)) <= eps:
        q -= 1
    return min(q, q_max)


def poly_projector_apply(Cmat, spec: PolyProjectorSpec, *, zero_tol: Optional[float] = None) -> ComplexMatrix:
    """Σ_j p(σ_j/α)|v_j⟩⟨v_j| over the right singular vectors of Cmat"""
    zero_tol = settings.rank_tol if zero_tol is None else zero_tol
    C = np.atleast_2d(np.asarray(Cmat, dtype=np.complex128))
    n = C.shape[1]
    if C.shape[0] == 0:
        return np.eye(n, dtype=np.complex128)

    _, sigma, vh = scipy.linalg.svd(C, full_matrices=True)
    padded = np.zeros(n)
    padded[: sigma.size] = sigma

    slack = 1e-9 * spec.alpha
    offending = [s for s in padded if s > zero_tol and not (spec.gamma - slack <= s <= spec.alpha + slack)]
    if offending:
        raise GapViolationError(
            f"singular values {', '.join(f'{s:.6g}' for s in offending)} lie outside "
            f"{{0}} ∪ [{spec.gamma:.6g}, {spec.alpha:.6g}]"
        )

    values = filter_polynomial(np.minimum(padded / spec.alpha, 1.0), spec.relative_gap, spec.degree)
    values[padded <= zero_tol] = 1.0
    V = dagger(vh)
    result = (V * values) @ dagger(V)
    logger.debug(f"polynomial projector of degree {spec.degree} applied to {C.shape} operator")
    return result


def projector_error(Cmat, spec: PolyProjectorSpec, exact: np.ndarray) -> Dict[str, float]:
    approx = poly_projector_apply(Cmat, spec)
    return {
        "error": float(np.linalg.norm(approx - exact, 2)),
        "idempotency": float(np.linalg.norm(approx @ approx - approx, 2)),
        "degree": spec.degree,
    }
