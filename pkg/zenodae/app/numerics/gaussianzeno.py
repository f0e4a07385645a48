# zenodae/app/numerics/gaussianzeno.py - Gaussian moment dilation, Gaussian-LCHS quadrature and Dirac-Zeno product

import logging
import math
from typing import Dict, List, Optional

import numpy as np
from numpy.polynomial.hermite import hermgauss

from ..config import settings
from ..errors import ParameterError, StructureError
from ..models.gaussian import GaussianAncilla, LchsQuadrature
from ..models.stokes import StokesOperators
from .matcore import ComplexMatrix, ComplexVector, hermiticity_defect, kron, matexp, require_square

logger = logging.getLogger(__name__)

# moments are checked up to this order when measuring m_max
_MOMENT_CEILING = 12


def gaussian_moment(m: int) -> float:
    """(2m)!/m!, the 2m-th moment of a centered Gaussian with variance 2"""
    return math.factorial(2 * m) / math.factorial(m)


def ancilla_moment(anc: GaussianAncilla, k: int) -> float:
    """⟨g|Fq^k|g⟩, summed over mirrored node pairs so odd orders vanish exactly"""
    half = anc.Q // 2
    q = anc.nodes[half:]
    rho = anc.density[half:]
    return float(np.sum(q ** k * rho) * (1 + (-1) ** k))


def gaussian_ancilla(Q: int = 256, qmax: float = 12.0, *, gauss_tol: Optional[float] = None) -> GaussianAncilla:
    """
    Nodes ±(j+½)dq with dq = 2qmax/(Q-1), trapezoid weights and
    g_j = (4π)^{-1/4} e^{-q_j²/8} √w_j renormalized to unit norm.

    Even moments are compared relatively to (2m)!/m!; m_max is the largest order
    that passes together with every lower one.
    """
    gauss_tol = settings.gauss_tol if gauss_tol is None else gauss_tol
    if Q < 16 or Q % 2:
        raise ParameterError(f"Gaussian grid needs an even Q >= 16, got {Q}")
    if qmax < 6:
        raise ParameterError(f"qmax must be at least 6, got {qmax}")

    dq = 2.0 * qmax / (Q - 1)
    positive = (np.arange(Q // 2) + 0.5) * dq
    nodes = np.concatenate([-positive[::-1], positive])
    weights = np.full(Q, dq)
    weights[0] = weights[-1] = dq / 2

    g = (4 * math.pi) ** -0.25 * np.exp(-nodes ** 2 / 8) * np.sqrt(weights)
    g = g / np.linalg.norm(g)
    for arr in (nodes, weights, g):
        arr.flags.writeable = False

    draft = GaussianAncilla(Q=Q, qmax=qmax, nodes=nodes, weights=weights, g=g, m_max=0)
    m_max = -1
    for m in range(_MOMENT_CEILING + 1):
        exact = gaussian_moment(m)
        if abs(ancilla_moment(draft, 2 * m) - exact) > gauss_tol * exact:
            break
        m_max = m
    if m_max < 6:
        logger.warning(f"Gaussian ancilla Q={Q}, qmax={qmax} matches even moments only up to m={m_max}")

    return GaussianAncilla(Q=Q, qmax=qmax, nodes=nodes, weights=weights, g=g, m_max=m_max)


def characteristic_function(anc: GaussianAncilla, u) -> np.ndarray:
    """⟨g|e^{-iuFq}|g⟩, which approximates e^{-u²}"""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    return np.exp(-1j * np.outer(u, anc.nodes)) @ anc.density


def _require_hermitian(B: np.ndarray) -> None:
    require_square(B, "B")
    scale = max(1.0, float(np.linalg.norm(B)))
    defect = hermiticity_defect(B)
    if defect > 1e-10 * scale:
        raise StructureError(f"B must be Hermitian, ‖B - B†‖ = {defect:.3e}")


def heat_via_dilation(B, anc: GaussianAncilla, t: float) -> ComplexMatrix:
    """
    (⟨g|⊗I) exp(-i√t Fq⊗B) (|g⟩⊗I), which equals exp(-tB²) up to the grid error.

    The tensor exponential is assembled densely when it fits the size cap;
    otherwise Fq being diagonal lets it be taken node by node.
    """
    B = np.asarray(B, dtype=np.complex128)
    _require_hermitian(B)
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    dim = B.shape[0]
    if t == 0:
        return np.eye(dim, dtype=np.complex128)

    root = math.sqrt(t)
    if anc.Q * dim <= settings.size_cap:
        U = matexp(-1j * root * kron(anc.Fq, B))
        g = anc.g.reshape(-1, 1)
        left = kron(g.T, np.eye(dim))
        right = kron(g, np.eye(dim))
        return left @ U @ right

    logger.debug(f"heat dilation of dim {dim} taken block-wise over {anc.Q} nodes")
    result = np.zeros((dim, dim), dtype=np.complex128)
    for q, rho in zip(anc.nodes, anc.density):
        result += rho * matexp(-1j * root * q * B)
    return result


def lchs_nodes(t: float, Mq: int) -> LchsQuadrature:
    """Gauss–Hermite rule for (1/√π)∫e^{-s²}e^{-2i√t sB}ds: k_m = 2√t s_m, c_m = w_m/√π"""
    if Mq < 1:
        raise ParameterError(f"quadrature needs at least one node, got {Mq}")
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    s, w = hermgauss(Mq)
    k = 2.0 * math.sqrt(t) * s
    c = w / math.sqrt(math.pi)
    for arr in (k, c):
        arr.flags.writeable = False
    return LchsQuadrature(t=t, Mq=Mq, k=k, c=c, kmax=float(np.max(np.abs(k))))


def apply_lchs(B, quad: LchsQuadrature, v) -> ComplexVector:
    """Σ_m c_m exp(-ik_m B) v"""
    B = np.asarray(B, dtype=np.complex128)
    _require_hermitian(B)
    v = np.asarray(v, dtype=np.complex128)
    result = np.zeros_like(v)
    for k, c in zip(quad.k, quad.c):
        result += c * (matexp(-1j * k * B) @ v)
    return result


def lchs_error(B, quad: LchsQuadrature, v) -> float:
    B = np.asarray(B, dtype=np.complex128)
    exact = matexp(-quad.t * (B @ B)) @ np.asarray(v, dtype=np.complex128)
    return float(np.linalg.norm(apply_lchs(B, quad, v) - exact))


def scalar_lchs_error(lam: float, t: float, Mq: int) -> float:
    quad = lchs_nodes(t, Mq)
    approx = np.sum(quad.c * np.exp(-1j * quad.k * lam))
    return float(abs(approx - math.exp(-t * lam ** 2)))


def required_nodes(t_lambda2: float, tol: float = 1e-6, max_nodes: int = 200) -> int:
    """Smallest node count reaching tol for the scalar case tλ² = t_lambda2 (t = 1)"""
    lam = math.sqrt(t_lambda2)
    for Mq in range(1, max_nodes + 1):
        if scalar_lchs_error(lam, 1.0, Mq) <= tol:
            return Mq
    raise ParameterError(f"no rule with at most {max_nodes} nodes reaches {tol:g} at tλ² = {t_lambda2}")


def lchs_error_sweep(ops: StokesOperators, u0, t: float, node_counts: List[int]) -> List[Dict[str, float]]:
    """Error of apply_lchs on v = (u0, 0) against exp(-tSh)u0, first block only"""
    nv = ops.grid.n_velocity
    u0 = np.asarray(u0, dtype=np.complex128)
    v = np.concatenate([u0, np.zeros(ops.n_gradient, dtype=np.complex128)])
    exact = matexp(-t * ops.Sh) @ u0
    Bh = ops.Bh
    rows = []
    for Mq in node_counts:
        quad = lchs_nodes(t, Mq)
        approx = apply_lchs(Bh, quad, v)[:nv]
        rows.append({
            "Mq": Mq,
            "err": float(np.linalg.norm(approx - exact)),
            "kmax": quad.kmax,
            "sum_c": quad.weight_sum,
        })
    return rows


def semigroup_from_dirac(ops: StokesOperators, t: float) -> ComplexMatrix:
    """(⟨0|⊗I) exp(-tBh²) (|0⟩⊗I)"""
    nv = ops.grid.n_velocity
    return matexp(-t * (ops.Bh @ ops.Bh))[:nv, :nv]


def chi_factor(ops: StokesOperators, u0, t: float) -> float:
    """χ = 1/‖exp(-tSh)ψ0‖ for the normalized divergence-free part ψ0 of u0"""
    if t < 0:
        raise ParameterError(f"time must be nonnegative, got {t}")
    psi = ops.PiH @ np.asarray(u0, dtype=np.complex128)
    norm = float(np.linalg.norm(psi))
    if norm <= settings.consistency_tol:
        raise ParameterError("initial velocity has no divergence-free component")
    psi = psi / norm
    return 1.0 / float(np.linalg.norm(matexp(-t * ops.Sh) @ psi))


def zeno_dirac_product(ops: StokesOperators, k: float, r: int) -> ComplexMatrix:
    """(𝒫 e^{-ik𝒟/r} 𝒫)^r with 𝒟 = [[0, Gh†], [Gh, 0]] and 𝒫 = diag(Π_h, I)"""
    if r < 1:
        raise ParameterError(f"repetition count must be >= 1, got {r}")
    P = ops.dirac_projector
    step = P @ matexp(-1j * (k / r) * ops.dirac) @ P
    return np.linalg.matrix_power(step, r)


def dirac_zeno_error(ops: StokesOperators, k: float, r: int) -> float:
    target = matexp(-1j * k * ops.Bh) @ ops.dirac_projector
    return float(np.linalg.norm(zeno_dirac_product(ops, k, r) - target, 2))
