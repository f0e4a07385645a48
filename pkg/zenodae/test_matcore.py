import numpy as np
import pytest

from zenodae.app.config import settings
from zenodae.app.errors import CapacityError, RankError, ShapeError
from zenodae.app.numerics import matcore


def test_as_matrix_is_readonly_complex():
    a = matcore.as_matrix([[1, 2], [3, 4]])
    assert a.dtype == np.complex128
    assert not a.flags.writeable


def test_as_matrix_promotes_vector_to_row():
    assert matcore.as_matrix([1.0, 2.0, 3.0]).shape == (1, 3)


def test_non_finite_entries_rejected():
    with pytest.raises(ShapeError):
        matcore.as_matrix([[1.0, np.nan]])
    with pytest.raises(ShapeError):
        matcore.as_vector([np.inf])


def test_kron_shape_and_cap():
    a = np.ones((2, 3))
    b = np.ones((4, 5))
    assert matcore.kron(a, b).shape == (8, 15)
    with pytest.raises(CapacityError):
        matcore.kron(np.eye(100), np.eye(100), size_cap=4096)


def test_matexp_zero_and_diagonal():
    np.testing.assert_allclose(matcore.matexp(np.zeros((3, 3))), np.eye(3), atol=1e-15)
    d = np.array([0.5, -1.0, 2.0j])
    np.testing.assert_allclose(matcore.matexp(np.diag(d)), np.diag(np.exp(d)), atol=1e-12)
    assert matcore.matexp(np.zeros((0, 0))).shape == (0, 0)


def test_matexp_rejects_non_square():
    with pytest.raises(ShapeError):
        matcore.matexp(np.ones((2, 3)))


def test_null_projector_single_row():
    P = matcore.null_projector([[1.0, 0.0]])
    np.testing.assert_allclose(P, np.diag([0.0, 1.0]), atol=1e-14)


def test_null_projector_empty_constraint_is_identity():
    P = matcore.null_projector(np.zeros((0, 3)))
    np.testing.assert_allclose(P, np.eye(3))


def test_null_projector_rank_deficient():
    with pytest.raises(RankError):
        matcore.null_projector([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])


@pytest.mark.parametrize("seed", range(5))
def test_null_projector_defects(seed):
    rng = np.random.default_rng(seed)
    C = rng.standard_normal((3, 7)) + 1j * rng.standard_normal((3, 7))
    P = matcore.null_projector(C)
    defects = matcore.projector_defects(P, C)
    assert defects["hermitian"] <= 1e-12
    assert defects["idempotent"] <= 1e-12
    assert defects["annihilates"] <= 1e-12
    assert np.isclose(np.trace(P).real, 4.0)


def test_singular_values_empty():
    assert matcore.singular_values(np.zeros((0, 4))).size == 0


def _random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_kron_is_bilinear():
    rng = np.random.default_rng(11)
    A, A2 = _random_complex(rng, (2, 3)), _random_complex(rng, (2, 3))
    B, B2 = _random_complex(rng, (3, 2)), _random_complex(rng, (3, 2))
    alpha, beta = 0.5 - 2j, 1.5 + 0.25j
    np.testing.assert_allclose(
        matcore.kron(alpha * A + beta * A2, B),
        alpha * matcore.kron(A, B) + beta * matcore.kron(A2, B),
        atol=1e-12,
    )
    np.testing.assert_allclose(
        matcore.kron(A, alpha * B + beta * B2),
        alpha * matcore.kron(A, B) + beta * matcore.kron(A, B2),
        atol=1e-12,
    )


def test_kron_mixed_product():
    rng = np.random.default_rng(12)
    A, C = _random_complex(rng, (2, 3)), _random_complex(rng, (3, 4))
    B, D = _random_complex(rng, (3, 2)), _random_complex(rng, (2, 5))
    np.testing.assert_allclose(
        matcore.kron(A, B) @ matcore.kron(C, D),
        matcore.kron(A @ C, B @ D),
        atol=1e-12,
    )


@pytest.mark.parametrize("seed", range(4))
def test_matexp_inverse(seed):
    rng = np.random.default_rng(seed)
    A = _random_complex(rng, (6, 6))
    A /= np.linalg.norm(A, 2)
    product = matcore.matexp(A) @ matcore.matexp(-A)
    assert np.linalg.norm(product - np.eye(6)) <= 10 * settings.tol_exp


def test_matexp_rotation():
    theta = np.pi / 2
    R = matcore.matexp(np.array([[0.0, -theta], [theta, 0.0]]))
    np.testing.assert_allclose(R, [[0.0, -1.0], [1.0, 0.0]], atol=1e-14)


def test_matexp_of_skew_hermitian_is_unitary():
    rng = np.random.default_rng(5)
    H = _random_complex(rng, (8, 8))
    H = 2.5 * (H + H.conj().T) / np.linalg.norm(H + H.conj().T, 2)
    U = matcore.matexp(-1j * H)
    assert matcore.unitarity_defect(U) <= settings.tol_exp
    assert matcore.unitarity_defect(np.zeros((0, 0))) == 0.0


def test_explicit_size_cap_overrides_default():
    C = np.ones((1, 5))
    with pytest.raises(CapacityError):
        matcore.null_projector(C, size_cap=4)
    assert matcore.null_projector(C, size_cap=5).shape == (5, 5)
    with pytest.raises(CapacityError):
        matcore.matexp(np.zeros((5, 5)), size_cap=4)
