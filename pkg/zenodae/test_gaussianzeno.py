import math

import numpy as np
import pytest

from zenodae.app.errors import ParameterError, StructureError
from zenodae.app.numerics import gaussianzeno, stokesmac
from zenodae.app.numerics.matcore import matexp


@pytest.fixture(scope="module")
def ancilla():
    return gaussianzeno.gaussian_ancilla(256, 12.0)


@pytest.fixture(scope="module")
def ops4():
    return stokesmac.build_operators(4)


def test_gaussian_moment_values():
    assert gaussianzeno.gaussian_moment(0) == 1.0
    assert gaussianzeno.gaussian_moment(1) == 2.0
    assert gaussianzeno.gaussian_moment(2) == 12.0


def test_ancilla_state_is_normalized(ancilla):
    assert np.linalg.norm(ancilla.g) == pytest.approx(1.0, abs=1e-12)
    assert ancilla.density.sum() == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(ancilla.nodes, -ancilla.nodes[::-1], atol=0)


def test_ancilla_even_moments(ancilla):
    assert ancilla.m_max >= 6
    for m in range(7):
        exact = gaussianzeno.gaussian_moment(m)
        assert abs(gaussianzeno.ancilla_moment(ancilla, 2 * m) - exact) <= 1e-8 * exact


def test_ancilla_odd_moments_vanish(ancilla):
    for k in (1, 3, 5, 7):
        assert gaussianzeno.ancilla_moment(ancilla, k) == 0.0


def test_characteristic_function(ancilla):
    u = np.linspace(0.0, 3.0, 61)
    values = gaussianzeno.characteristic_function(ancilla, u)
    assert np.max(np.abs(values - np.exp(-u ** 2))) <= 1e-8


@pytest.mark.parametrize("Q,qmax", [(14, 12.0), (255, 12.0), (256, 5.0)])
def test_ancilla_rejects_bad_grids(Q, qmax):
    with pytest.raises(ParameterError):
        gaussianzeno.gaussian_ancilla(Q, qmax)


def test_heat_via_dilation_diagonal(ancilla):
    lam = np.array([0.5, 1.0, -1.5])
    B = np.diag(lam)
    np.testing.assert_allclose(gaussianzeno.heat_via_dilation(B, ancilla, 0.0), np.eye(3))
    result = gaussianzeno.heat_via_dilation(B, ancilla, 0.5)
    np.testing.assert_allclose(result, np.diag(np.exp(-0.5 * lam ** 2)), atol=1e-8)


def test_heat_via_dilation_on_stokes_dirac(ancilla, ops4):
    B = ops4.Bh
    t = 1.0 / np.linalg.norm(B, 2) ** 2
    result = gaussianzeno.heat_via_dilation(B, ancilla, t)
    assert np.linalg.norm(result - matexp(-t * (B @ B)), 2) <= 1e-6


def test_heat_via_dilation_rejects_non_hermitian(ancilla):
    with pytest.raises(StructureError):
        gaussianzeno.heat_via_dilation(np.array([[0.0, 1.0], [0.0, 0.0]]), ancilla, 0.1)


def test_lchs_weights():
    single = gaussianzeno.lchs_nodes(0.3, 1)
    np.testing.assert_allclose(single.k, [0.0], atol=1e-15)
    np.testing.assert_allclose(single.c, [1.0])
    for Mq in (2, 5, 16, 40):
        quad = gaussianzeno.lchs_nodes(0.3, Mq)
        assert abs(quad.weight_sum - 1.0) <= 1e-12
        assert np.all(quad.c > 0)
        assert quad.weight_l1 == pytest.approx(quad.weight_sum, rel=1e-15)
        assert quad.kmax == pytest.approx(float(np.max(np.abs(quad.k))))


def test_lchs_rejects_empty_rule():
    with pytest.raises(ParameterError):
        gaussianzeno.lchs_nodes(0.1, 0)


def test_scalar_error_decays_with_nodes():
    errors = [gaussianzeno.scalar_lchs_error(2.0, 1.0, Mq) for Mq in (4, 8, 16, 32)]
    assert errors[-1] <= 1e-6
    assert errors[-1] < errors[0]


def test_required_nodes_grow_with_stiffness():
    counts = [gaussianzeno.required_nodes(x) for x in (1.0, 4.0, 9.0)]
    assert counts == sorted(counts)
    with pytest.raises(ParameterError):
        gaussianzeno.required_nodes(400.0, max_nodes=4)


def test_lchs_sweep_on_stokes(ops4):
    u0 = stokesmac.taylor_green_init(ops4.grid)
    rows = gaussianzeno.lchs_error_sweep(ops4, u0, 0.01, [1, 2, 4, 8, 12, 16])
    errors = [row["err"] for row in rows]
    assert min(errors) <= 1e-6
    assert all(abs(row["sum_c"] - 1.0) <= 1e-12 for row in rows)
    for a, b in zip(errors, errors[1:]):
        assert b <= 1.5 * a or b <= 1e-12


def test_apply_lchs_matches_error_helper(ops4):
    v = np.zeros(ops4.Bh.shape[0], dtype=np.complex128)
    v[: ops4.grid.n_velocity] = stokesmac.taylor_green_init(ops4.grid)
    quad = gaussianzeno.lchs_nodes(1e-3, 20)
    approx = gaussianzeno.apply_lchs(ops4.Bh, quad, v)
    exact = matexp(-1e-3 * (ops4.Bh @ ops4.Bh)) @ v
    assert np.linalg.norm(approx - exact) == pytest.approx(gaussianzeno.lchs_error(ops4.Bh, quad, v), abs=1e-14)


def test_semigroup_from_dirac(ops4):
    extracted = gaussianzeno.semigroup_from_dirac(ops4, 0.01)
    np.testing.assert_allclose(extracted, matexp(-0.01 * ops4.Sh), atol=1e-12)


def test_chi_factor(ops4):
    u0 = stokesmac.taylor_green_init(ops4.grid)
    assert gaussianzeno.chi_factor(ops4, u0, 0.0) == pytest.approx(1.0)
    chis = [gaussianzeno.chi_factor(ops4, u0, t) for t in (0.001, 0.01, 0.05)]
    assert 1.0 <= chis[0] <= chis[1] <= chis[2]
    with pytest.raises(ParameterError):
        gaussianzeno.chi_factor(ops4, np.zeros_like(u0), 0.01)


def test_chi_factor_settles_under_refinement():
    chis = []
    for n in (4, 8, 16):
        ops = stokesmac.build_operators(n)
        chis.append(gaussianzeno.chi_factor(ops, stokesmac.taylor_green_init(ops.grid), 0.01))
    assert abs(chis[2] - chis[1]) < abs(chis[1] - chis[0])
    assert (max(chis) - min(chis)) / min(chis) <= 0.3


def test_dirac_zeno_product(ops4):
    np.testing.assert_allclose(gaussianzeno.zeno_dirac_product(ops4, 0.0, 3), ops4.dirac_projector, atol=1e-14)
    errors = [gaussianzeno.dirac_zeno_error(ops4, 0.1, r) for r in (16, 32, 64)]
    for a, b in zip(errors, errors[1:]):
        assert 1.4 <= a / b <= 2.6
    with pytest.raises(ParameterError):
        gaussianzeno.zeno_dirac_product(ops4, 0.1, 0)
