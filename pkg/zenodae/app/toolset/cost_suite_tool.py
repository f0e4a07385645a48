from pydantic import ValidationError

from .base_imports import *
from ..models.cost import CostInputs
from ..numerics import costmodel


class CostSuiteTool(SuiteTool):
    """Direct, Gaussian-Zeno and classical cost table over an (h, t) grid"""

    suite = Suite.COST
    sort_keys = ["h", "t"]

    def __init__(self):
        super().__init__()
        self.description = "Tabulate the three cost laws and mark where the Gaussian-Zeno route wins"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return [(h, t) for h in sorted(set(params["h"])) for t in sorted(set(params["t"]))]

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        h, t = point
        try:
            inputs = CostInputs(t=t, eps=params["eps"], h=h, d=params["d"], chi=params["chi"])
        except ValidationError as e:
            raise ConfigParseError(f"invalid cost inputs at h={h}, t={t}: {e.errors()[0]['msg']}")
        costmodel.error_budget(inputs)
        return [costmodel.evaluate(inputs).model_dump()]

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        by_t: Dict[float, List[Dict[str, Any]]] = {}
        for row in rows:
            by_t.setdefault(row["t"], []).append(row)

        exponent = params["d"] + 1
        for t, group in by_t.items():
            group = sorted(group, key=lambda r: r["h"], reverse=True)
            for coarse, fine in zip(group, group[1:]):
                refinement = coarse["h"] / fine["h"]
                classical = fine["classical"] / coarse["classical"]
                require(
                    math.isclose(classical, refinement ** exponent, rel_tol=1e-12),
                    f"classical cost ratio {classical:.6g} at t={t}, expected {refinement ** exponent:.6g}",
                )
                if not math.isclose(refinement, 2.0, rel_tol=1e-12):
                    continue
                direct = fine["direct_gates"] / coarse["direct_gates"]
                gz = fine["gz_gates"] / coarse["gz_gates"]
                require(6.8 <= direct <= 9.2, f"direct gates grow by {direct:.3f} when h halves at h={fine['h']}")
                require(3.6 <= gz <= 4.4, f"Gaussian-Zeno gates grow by {gz:.3f} when h halves at h={fine['h']}")

        by_h: Dict[float, Dict[float, Dict[str, Any]]] = {}
        for row in rows:
            by_h.setdefault(row["h"], {})[row["t"]] = row
        for h, cells in by_h.items():
            for t, row in cells.items():
                longer = cells.get(4 * t)
                if longer is not None:
                    ratio = longer["gz_gates"] / row["gz_gates"]
                    require(math.isclose(ratio, 2.0, rel_tol=1e-12), f"Gaussian-Zeno gates scale by {ratio:.6g} when t quadruples")
