# zenodae/app/numerics/costmodel.py - Query and gate count calculator for the simulation routes
#
# Every implied constant is 1 and every logarithm is natural; only ratios between
# grid points carry meaning.

import logging
import math
from typing import Dict, Iterable, List, Tuple

from ..errors import ParameterError
from ..models.cost import CostBreakdown, CostInputs, Verdict

logger = logging.getLogger(__name__)


def hamiltonian_sim_queries(x: float, eps: float) -> float:
    """x + ln(1/ε)/ln(e + ln(1/ε)/x) for simulation time-norm product x"""
    if x <= 0 or not 0 < eps < 1:
        raise ParameterError(f"need x > 0 and 0 < eps < 1, got x={x}, eps={eps}")
    log_eps = math.log(1.0 / eps)
    return x + log_eps / math.log(math.e + log_eps / x)


def projector_degree(inputs: CostInputs) -> int:
    """𝔭 = ceil((α_D/γ)·ln(α_Ĥt/ε)), never negative"""
    argument = inputs.alphaH * inputs.t / inputs.eps
    return max(0, int(math.ceil((inputs.alphaD / inputs.gamma) * math.log(argument))))


def direct_cost(inputs: CostInputs) -> Tuple[float, float, int]:
    """(queries, gates, 𝔭) for simulating PĤP with a polynomial projector per step"""
    sim = hamiltonian_sim_queries(inputs.alphaH * inputs.t, inputs.eps)
    p = projector_degree(inputs)
    return sim * (1 + p), sim * (inputs.TH + p * inputs.TD), p


def gaussian_zeno_cost(inputs: CostInputs) -> Tuple[float, float]:
    """(√t·h⁻¹·(T_G + h⁻¹T_D), χ·h⁻²·√t)"""
    root_t = math.sqrt(inputs.t)
    inv_h = 1.0 / inputs.h
    gates = root_t * inv_h * (inputs.TG + inv_h * inputs.TD)
    prep = inputs.chi * inv_h ** 2 * root_t
    return gates, prep


def classical_cost(inputs: CostInputs) -> float:
    """t·h^{-d-1}: O(h^{-d}) work per step over t/h steps"""
    if inputs.d not in (2, 3):
        raise ParameterError(f"spatial dimension must be 2 or 3, got {inputs.d}")
    return inputs.t * inputs.h ** (-inputs.d - 1)


def lchs_queries(alpha_B: float, t: float) -> float:
    """Simulation time budget α_B√t of the Gaussian-LCHS route"""
    if alpha_B <= 0 or t < 0:
        raise ParameterError(f"need alpha_B > 0 and t >= 0, got {alpha_B}, {t}")
    return alpha_B * math.sqrt(t)


def error_budget(inputs: CostInputs) -> Dict[str, float]:
    """
    Split of ε between the simulation steps and the projector.

    η_D = η_P/𝔭 is reported without pricing it.
    """
    p = projector_degree(inputs)
    eta_H = inputs.eps / inputs.t
    eta_P = inputs.eps / (inputs.alphaH * inputs.t)
    budget = {"eta_H": eta_H, "eta_P": eta_P, "eta_D": eta_P / p if p else eta_P}
    logger.debug(f"error budget at h={inputs.h}, t={inputs.t}: {budget}")
    return budget


def evaluate(inputs: CostInputs) -> CostBreakdown:
    queries, gates, p = direct_cost(inputs)
    gz_gates, gz_prep = gaussian_zeno_cost(inputs)
    classical = classical_cost(inputs)
    verdict = Verdict.QUANTUM if inputs.chi * gz_gates < classical else Verdict.CLASSICAL
    return CostBreakdown(
        h=inputs.h,
        t=inputs.t,
        eps=inputs.eps,
        d=inputs.d,
        chi=inputs.chi,
        p_degree=p,
        direct_queries=queries,
        direct_gates=gates,
        gz_gates=gz_gates,
        gz_prep=gz_prep,
        classical=classical,
        verdict=verdict,
    )


def crossover_report(
    hs: Iterable[float],
    ts: Iterable[float],
    eps: float = 1e-3,
    d: int = 2,
    chi: float = 1.0,
    **overrides,
) -> List[CostBreakdown]:
    """
    Heuristic comparison over an (h, t) grid, not an end-to-end separation.

    A cell is marked quantum when χ times the Gaussian-Zeno gate count is below the
    classical work.
    """
    hs, ts = list(hs), list(ts)
    if not hs or not ts:
        raise ParameterError("crossover report needs nonempty h and t ranges")
    rows = []
    for h in sorted(hs, reverse=True):
        for t in sorted(ts):
            inputs = CostInputs(t=t, eps=eps, h=h, d=d, chi=chi, **overrides)
            error_budget(inputs)
            rows.append(evaluate(inputs))
    flips = sum(row.verdict == Verdict.QUANTUM for row in rows)
    logger.info(f"crossover report: {flips} of {len(rows)} cells favor the Gaussian-Zeno route")
    return rows
