from .base_imports import *
from ..numerics import daemodel, momentdilation, zenoprotocol


class ZenoSuiteTool(SuiteTool):
    """Repeated-projection product against the compressed exponential"""

    suite = Suite.ZENO
    sort_keys = ["N"]

    def __init__(self):
        super().__init__()
        self.description = "Measure (P e^{-itĤ/N} P)^N Ψ0 against exp(-itPĤP)Ψ0 over N"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return sorted(set(params["N"]))

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        dae = daemodel.random_dae(params["n"], params["m"], seed)
        anc = momentdilation.build_ancilla(params["M"])
        sys = momentdilation.build_dilated(dae, anc)
        t = params["t"]
        exact = momentdilation.evolve_dilated(sys, t)
        err = float(np.linalg.norm(zenoprotocol.zeno_product(sys, t, point) - exact))
        logger.debug(f"Zeno product N={point}: error {err:.3e}")
        return [{"N": point, "err": err}]

    def finalize(self, rows: List[Dict[str, Any]], params: Dict[str, Any]) -> List[Dict[str, Any]]:
        for row, following in zip(rows, rows[1:] + [None]):
            if following is not None and following["err"] > 0:
                row["ratio"] = row["err"] / following["err"]
            else:
                row["ratio"] = math.nan
        return rows

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        if len(rows) < 3:
            logger.info("Fewer than three N values; skipping the convergence-order check")
            return
        order = zenoprotocol.empirical_order([r["N"] for r in rows], [r["err"] for r in rows])
        logger.info(f"Zeno product empirical order {order:.3f}")
        require(0.8 <= order <= 1.2, f"Zeno product converges with order {order:.3f}, expected about 1")
