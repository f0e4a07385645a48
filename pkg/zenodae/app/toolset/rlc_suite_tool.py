from .base_imports import *
from ..models.rlc import RlcParams
from ..numerics import rlcladder, stokesmac

# ‖e1‖ + 2‖K_N‖ + R + G at the default parameters
NORM_BOUND = 5.25


class RlcSuiteTool(SuiteTool):
    """Structural checks and dilation recovery on the RLC ladder family"""

    suite = Suite.RLC
    sort_keys = ["N"]

    def __init__(self):
        super().__init__()
        self.description = "Verify σ(D_N) = {1, √2}, the norm bound and dilation recovery per section count"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return sorted(set(params["N"]))

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        rlc = RlcParams(N=point)
        t = params["t"]
        row = rlcladder.rlc_dilation_check(rlc, params["M"], params["jstar"], [t], seed=seed)[0]
        row.update(rlcladder.structure_report(rlcladder.build_rlc(rlc, seed=seed)))
        return [row]

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        tol = params["tol"]
        for row in rows:
            N = row["N"]
            require(abs(row["sigma_min"] - 1.0) <= 1e-12, f"σ_min(D_{N}) = {row['sigma_min']!r}, expected 1")
            require(abs(row["sigma_max"] - math.sqrt(2.0)) <= 1e-12, f"σ_max(D_{N}) = {row['sigma_max']!r}, expected √2")
            require(row["norm_L"] <= NORM_BOUND, f"‖L_{N}‖ = {row['norm_L']:.4f} exceeds {NORM_BOUND}")
            require(row["err"] <= tol, f"RLC dilation error {row['err']:.3e} exceeds {tol:g} at N={N}")
            require(row["constraint_residual"] <= 1e-8, f"‖D_N x(t)‖ = {row['constraint_residual']:.3e} at N={N}")

    def dump_operators(self, params: Dict[str, Any], out_dir: Path) -> List[Path]:
        written = []
        for N in self.points(params):
            dae = rlcladder.build_rlc(RlcParams(N=N))
            for name, matrix in (("L", dae.L), ("D", dae.C)):
                path = Path(out_dir) / f"rlc_{name}_N{N}.mtx"
                try:
                    with open(path, "w") as f:
                        stokesmac.dump_operator(name, matrix, f, N=N)
                except OSError as e:
                    raise OutputError(f"cannot write {path}: {e}")
                written.append(path)
        return written
