from .base_imports import *
from .operator_cache import operator_cache
from ..numerics import momentdilation, stokesmac


class StokesSuiteTool(SuiteTool):
    """End-to-end dilation of the MAC Stokes system from the Taylor-Green velocity"""

    suite = Suite.STOKES
    sort_keys = ["n"]

    def __init__(self):
        super().__init__()
        self.description = "Dilate the semidiscrete Stokes DAE and compare with exp(-tSh)Π_h u0"

    def points(self, params: Dict[str, Any]) -> List[Any]:
        return sorted(set(params["n"]))

    def run_point(self, point: Any, params: Dict[str, Any], seed: int) -> List[Dict[str, Any]]:
        ops = operator_cache.get_or_build("stokes", point, stokesmac.build_operators)
        defects = stokesmac.factorization_defects(ops)
        worst = max(defects.values())
        require(worst <= 1e-12, f"MAC factorization defects {defects} at n={point}")

        t = params["t"]
        u0 = stokesmac.taylor_green_init(ops.grid)
        dae = stokesmac.assemble_stokes_dae(ops, u0)
        anc = momentdilation.build_ancilla(params["M"])
        sys = momentdilation.build_dilated(dae, anc)
        x = momentdilation.recover(sys, anc, momentdilation.evolve_dilated(sys, t))
        reference = stokesmac.reduced_evolve(ops, u0, t)

        row = {
            "n": point,
            "t": t,
            "err": float(np.linalg.norm(x - reference)),
            "div_residual": stokesmac.divergence_residual(ops, x),
            "sigma_min": stokesmac.inf_sup_constant(point),
        }
        logger.debug(f"Stokes n={point}: {row}")
        return [row]

    def check(self, rows: List[Dict[str, Any]], params: Dict[str, Any], seed: int) -> None:
        tol = params["tol"]
        for row in rows:
            require(row["err"] <= tol, f"Stokes dilation error {row['err']:.3e} exceeds {tol:g} at n={row['n']}")
            require(row["div_residual"] <= 1e-8, f"velocity leaves ker(Dh) by {row['div_residual']:.3e} at n={row['n']}")

    def dump_operators(self, params: Dict[str, Any], out_dir: Path) -> List[Path]:
        written = []
        for n in self.points(params):
            ops = operator_cache.get_or_build("stokes", n, stokesmac.build_operators)
            sparse = {"Gh": ops.gradient, "Dh": ops.divergence, "Lap": ops.laplacian}
            for name in ("Gh", "Dh", "Lap", "Sh", "Bh"):
                matrix = sparse[name] if name in sparse else getattr(ops, name)
                path = Path(out_dir) / f"stokes_{name}_n{n}.mtx"
                try:
                    with open(path, "w") as f:
                        stokesmac.dump_operator(name, matrix, f, drop_tol=1e-14, n=ops.grid.n, h=ops.grid.h)
                except OSError as e:
                    raise OutputError(f"cannot write {path}: {e}")
                written.append(path)
        logger.info(f"Dumped {len(written)} Stokes operators to {out_dir}")
        return written
