from .base_imports import *
from .operator_cache import operator_cache
from ..numerics import gaussianzeno, stokesmac
from ..numerics.matcore import matexp

# errors below this level are rounding noise and excluded from the monotonicity check
NOISE_FLOOR = 1e-12


class GaussSuiteTool(SuiteTool):
    """Gaussian ancilla identities and Gaussian-LCHS convergence on the Stokes Dirac operator"""

    suite = Suite.GAUSS
    sort_keys = ["Mq"]

    def __init__(self):
        super().__init__()
        self.description = "Check the Gaussian moment identities and the LCHS node-count sweep"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return sorted(set(params["Mq"]))

    def _operators(self, params: Dict[str, Any]):
        return operator_cache.get_or_build("stokes", params["n"], stokesmac.build_operators)

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        ops = self._operators(params)
        u0 = ops.PiH @ stokesmac.taylor_green_init(ops.grid)
        u0 = u0 / np.linalg.norm(u0)
        return gaussianzeno.lchs_error_sweep(ops, u0, params["t"], [point])

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        anc = gaussianzeno.gaussian_ancilla(params["Q"], params["qmax"])
        require(anc.m_max >= 6, f"Gaussian ancilla matches even moments only to m={anc.m_max}")
        u = np.linspace(0.0, 3.0, 61)
        char_err = float(np.max(np.abs(gaussianzeno.characteristic_function(anc, u) - np.exp(-u ** 2))))
        require(char_err <= 1e-8, f"characteristic function deviates by {char_err:.3e}")

        for row in rows:
            require(abs(row["sum_c"] - 1.0) <= 1e-12, f"LCHS weights sum to {row['sum_c']!r} at Mq={row['Mq']}")
            quad = gaussianzeno.lchs_nodes(params["t"], row["Mq"])
            require(
                quad.weight_l1 <= quad.weight_sum + 1e-15,
                f"LCHS weights change sign at Mq={row['Mq']} (Σ|c| = {quad.weight_l1!r})",
            )
        for row, following in zip(rows, rows[1:]):
            if row["err"] > NOISE_FLOOR and following["err"] > NOISE_FLOOR:
                require(
                    following["err"] <= 1.5 * row["err"],
                    f"LCHS error grows from {row['err']:.3e} (Mq={row['Mq']}) to {following['err']:.3e}",
                )

        reached = [row["Mq"] for row in rows if row["err"] <= params["tol"]]
        if reached:
            logger.info(f"Gaussian-LCHS reaches {params['tol']:g} with Mq={reached[0]} at t={params['t']}")
        else:
            logger.warning(f"No node count in the sweep reaches {params['tol']:g}")

        ops = self._operators(params)
        exact = matexp(-params["t"] * ops.Sh)
        gap = float(np.linalg.norm(gaussianzeno.semigroup_from_dirac(ops, params["t"]) - exact))
        require(gap <= 1e-12, f"semigroup extraction from Bh² is off by {gap:.3e}")
