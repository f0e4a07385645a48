from .base_imports import *
from ..numerics import daemodel, momentdilation


class DilationSuiteTool(SuiteTool):
    """Moment-dilation recovery on a seeded random DAE over a time grid"""

    suite = Suite.DILATE
    sort_keys = ["t"]

    def __init__(self):
        super().__init__()
        self.description = "Recover the DAE solution from the dilated state and compare with exp(tΠLΠ)x0"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return sorted(set(params["times"]))

    def _instance(self, params: Dict[str, Any], seed: int):
        dae = daemodel.random_dae(params["n"], params["m"], seed)
        anc = momentdilation.build_ancilla(params["M"], params["jstar"])
        return dae, anc

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        dae, anc = self._instance(params, seed)
        row = momentdilation.dilation_error_curve(dae, anc, [point])[0]

        steps = params["refresh_steps"]
        if steps > 1:
            reference = daemodel.reference_solve(daemodel.schur_reduce(dae), point)
            refreshed = momentdilation.ancilla_refresh_evolve(dae, anc, point, steps)
            row["err"] = float(np.linalg.norm(refreshed - reference))
            logger.debug(f"t={point}: refreshed over {steps} steps, error {row['err']:.3e}")

        if row["amplification"] > 1e6:
            logger.warning(f"recovery amplification {row['amplification']:.2e} at t={point}")
        return [row]

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        tol = params["tol"]
        for row in rows:
            require(row["err"] <= tol, f"dilation error {row['err']:.3e} exceeds {tol:g} at t={row['t']}")

        dae, anc = self._instance(params, seed)
        require(
            anc.exact_order >= anc.nominal_order,
            f"ancilla matches moments to order {anc.exact_order}, below nominal {anc.nominal_order}",
        )
        t_end = max(row["t"] for row in rows)
        gap = momentdilation.commuting_square_gap(dae, anc, t_end)
        require(gap <= 1e-10, f"dilate-then-reduce and reduce-then-dilate differ by {gap:.3e} at t={t_end}")
