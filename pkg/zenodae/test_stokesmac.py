import io
import math

import numpy as np
import pytest

from zenodae.app.errors import CapacityError, ParameterError, ShapeError
from zenodae.app.models.stokes import StaggeredGrid
from zenodae.app.numerics import daemodel, momentdilation, stokesmac


@pytest.fixture(scope="module")
def ops8():
    return stokesmac.build_operators(8)


def test_grid_counts_n2():
    grid = stokesmac.build_grid(2)
    assert (grid.nu1, grid.nu2, grid.n_pressure) == (2, 2, 3)
    assert grid.n_velocity == 4


def test_grid_rejects_inconsistent_counts():
    with pytest.raises(ValueError):
        StaggeredGrid(n=3, h=1 / 3, nu1=6, nu2=6, n_pressure=9)


def test_grid_limits():
    with pytest.raises(ParameterError):
        stokesmac.build_grid(1)
    with pytest.raises(CapacityError):
        stokesmac.build_grid(stokesmac.MAX_CELLS + 1)


def test_velocity_indexing_round_trip():
    grid = stokesmac.build_grid(5)
    for k in range(grid.n_velocity):
        component, i, j = grid.locate(k)
        index = grid.u1_index(i, j) if component == "u1" else grid.u2_index(i, j)
        assert index == k


def test_operator_shapes(ops8):
    grid = ops8.grid
    assert ops8.Dh.shape == (grid.n_pressure, grid.n_velocity)
    assert ops8.Gh.shape[1] == grid.n_velocity
    assert ops8.Bh.shape == (grid.n_velocity + ops8.n_gradient,) * 2


def test_laplacian_is_minus_gradient_square(ops8):
    np.testing.assert_array_equal(ops8.Lap, -(ops8.Gh.conj().T @ ops8.Gh))


@pytest.mark.parametrize("n", [2, 4, 8])
def test_projector_annihilated_by_divergence(n):
    ops = stokesmac.build_operators(n)
    assert np.linalg.norm(ops.Dh @ ops.PiH, 2) <= 1e-10


@pytest.mark.parametrize("n", [4, 8, 16])
def test_scaling(n):
    report = stokesmac.scaling_report(stokesmac.build_operators(n))
    assert 4.0 <= report["lap_h2"] <= 8.0
    assert 2.0 <= report["grad_h"] <= 2 * math.sqrt(2) + 1e-12
    assert report["div_h"] <= 2 * math.sqrt(2) + 1e-12
    assert report["dirac_h"] <= report["grad_h"] + 1e-12


@pytest.mark.parametrize("n", [4, 8, 16])
def test_factorization_defects(n):
    defects = stokesmac.factorization_defects(stokesmac.build_operators(n))
    for name, value in defects.items():
        assert value <= 1e-12, name


@pytest.mark.parametrize("n", [16, 32, stokesmac.MAX_CELLS])
def test_sparse_operator_norms(n):
    ops = stokesmac.build_operators(n)
    norms = stokesmac.operator_norms(ops)
    assert 4.0 <= norms["lap_h2"] <= 8.0
    assert 2.0 <= norms["grad_h"] <= 2 * math.sqrt(2) + 1e-12
    assert norms["div_h"] <= 2 * math.sqrt(2) + 1e-12


def test_sparse_norms_agree_with_dense(ops8):
    sparse = stokesmac.operator_norms(ops8)
    dense = stokesmac.scaling_report(ops8)
    for key in ("lap_h2", "grad_h", "div_h"):
        assert sparse[key] == pytest.approx(dense[key], rel=1e-8), key


@pytest.mark.parametrize("n", [33, 40, stokesmac.MAX_CELLS])
def test_build_operators_above_the_dense_size_cap(n):
    ops = stokesmac.build_operators(n)
    grid = ops.grid
    assert ops.gradient.shape == (4 * n * n - 2, grid.n_velocity)
    assert ops.divergence.shape == (grid.n_pressure, grid.n_velocity)
    assert abs(ops.laplacian + ops.gradient.T @ ops.gradient).max() == 0


@pytest.mark.parametrize("n", [4, 8, 16])
def test_taylor_green_symmetry_and_divergence(n):
    ops = stokesmac.build_operators(n)
    u0 = stokesmac.taylor_green_init(ops.grid)
    u1 = u0[: ops.grid.nu1].reshape(n, n - 1)
    u2 = u0[ops.grid.nu1:].reshape(n - 1, n)
    np.testing.assert_allclose(u2, -u1.T, atol=1e-14)
    # the sampled field is divergence free on the staggered grid
    assert stokesmac.divergence_residual(ops, u0) <= 1e-10


def test_assemble_keeps_divergence_free_data(ops8):
    u0 = stokesmac.taylor_green_init(ops8.grid)
    dae = stokesmac.assemble_stokes_dae(ops8, u0)
    np.testing.assert_allclose(dae.x0, u0, atol=1e-10)
    with pytest.raises(ShapeError):
        stokesmac.assemble_stokes_dae(ops8, u0[:-1])


def test_reduced_evolve_matches_reference(ops8):
    u0 = stokesmac.taylor_green_init(ops8.grid)
    red = daemodel.schur_reduce(stokesmac.assemble_stokes_dae(ops8, u0))
    for t in (0.0, 1e-3, 1e-2):
        np.testing.assert_allclose(
            stokesmac.reduced_evolve(ops8, u0, t),
            daemodel.reference_solve(red, t),
            atol=1e-10,
        )


def test_energy_decays(ops8):
    u0 = stokesmac.taylor_green_init(ops8.grid)
    norms = [np.linalg.norm(stokesmac.reduced_evolve(ops8, u0, t)) for t in (0.0, 0.01, 0.02, 0.05)]
    assert all(a >= b for a, b in zip(norms, norms[1:]))
    with pytest.raises(ParameterError):
        stokesmac.reduced_evolve(ops8, u0, -1.0)


def test_pressure_restores_the_constraint(ops8):
    u = stokesmac.reduced_evolve(ops8, stokesmac.taylor_green_init(ops8.grid), 1e-3)
    p = stokesmac.recover_pressure(ops8, u)
    assert p.size == ops8.grid.n ** 2
    assert abs(p.mean()) <= 1e-12
    velocity = ops8.Lap @ u + ops8.Dh.conj().T @ (p[1:] - p[0])
    assert np.linalg.norm(ops8.Dh @ velocity) <= 1e-9 * np.linalg.norm(ops8.Lap @ u)


def test_inf_sup_constant_is_mesh_independent():
    values = [stokesmac.inf_sup_constant(n) for n in (4, 8, 16)]
    for n, value in zip((4, 8, 16), values):
        assert value == pytest.approx(2 * n * math.sin(math.pi / (2 * n)), rel=1e-8)
    assert values[0] < values[1] < values[2] < math.pi


def test_dump_operator(ops8):
    stream = io.StringIO()
    count = stokesmac.dump_operator("Dh", ops8.Dh, stream, n=ops8.grid.n, h=ops8.grid.h)
    lines = stream.getvalue().splitlines()
    assert lines[0].startswith("% operator=Dh n=8 h=0.125 shape=63x112")
    assert len(lines) == count + 1
    row, col, re, im = lines[1].split()
    assert float(im) == 0.0
    assert ops8.Dh[int(row), int(col)] == float(re)


def test_moment_dilation_on_stokes(ops8):
    u0 = stokesmac.taylor_green_init(ops8.grid)
    dae = stokesmac.assemble_stokes_dae(ops8, u0)
    anc = momentdilation.build_ancilla(65)
    row = momentdilation.dilation_error_curve(dae, anc, [1e-3])[0]
    assert row["err"] <= 1e-6
