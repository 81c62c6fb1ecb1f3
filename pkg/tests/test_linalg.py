import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quadnewton.errors import SingularMatrix
from quadnewton.linalg import NormKind, lu_factor, lu_solve, matrix_inf_norm, norm


def test_identity_factors():
    f = lu_factor(np.eye(2))
    np.testing.assert_array_equal(f.lu, np.eye(2))
    assert list(f.perm) == [0, 1]
    assert f.sign == 1
    np.testing.assert_array_equal(lu_solve(f, np.array([7.0, -2.0])), [7.0, -2.0])


def test_permutation_matrix_swaps_rows():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    f = lu_factor(a)
    assert list(f.perm) == [1, 0]
    assert f.sign == -1
    np.testing.assert_array_equal(f.reconstruct(), a)


def test_two_by_two_hand_solution():
    # 2*1 + 1*1 = 3, 6*1 + 4*1 = 10
    a = np.array([[2.0, 1.0], [6.0, 4.0]])
    x = lu_solve(lu_factor(a), np.array([3.0, 10.0]))
    np.testing.assert_allclose(x, [1.0, 1.0], rtol=0, atol=1e-14)


def test_hilbert_row_sums():
    h = np.array([[1.0 / (i + j + 1) for j in range(3)] for i in range(3)])
    x = lu_solve(lu_factor(h), h.sum(axis=1))
    np.testing.assert_allclose(x, np.ones(3), rtol=1e-12)


def test_duplicated_row_is_singular():
    a = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [1.0, 2.0, 3.0]])
    with pytest.raises(SingularMatrix):
        lu_factor(a)


def test_threshold_is_scale_aware():
    # pivot 1e-10 is fine at unit scale but singular next to 1e3 entries
    lu_factor(np.array([[1.0, 0.0], [0.0, 1e-10]]))
    with pytest.raises(SingularMatrix):
        lu_factor(np.array([[1e3, 0.0], [0.0, 1e-10]]))


def test_rejects_nonsquare_and_nonfinite():
    with pytest.raises(ValueError):
        lu_factor(np.ones((2, 3)))
    with pytest.raises(ValueError):
        lu_factor(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        lu_solve(lu_factor(np.eye(2)), np.ones(3))


def test_random_round_trip_and_reconstruction():
    rng = np.random.default_rng(1234)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.uniform(-1, 1, (n, n)) + n * np.eye(n)
        x = rng.uniform(-1, 1, n)
        f = lu_factor(a)
        np.testing.assert_allclose(f.reconstruct(), a, rtol=0, atol=1e-12 * matrix_inf_norm(a))
        got = lu_solve(f, a @ x)
        assert np.max(np.abs(got - x)) <= 1e-10 * np.max(np.abs(x))
        # independent oracle
        np.testing.assert_allclose(got, np.linalg.solve(a, a @ x), rtol=1e-10, atol=1e-12)


def test_residual_bound():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        a = rng.uniform(-1, 1, (n, n)) + n * np.eye(n)
        b = rng.uniform(-5, 5, n)
        x = lu_solve(lu_factor(a), b)
        bound = 1e-10 * (matrix_inf_norm(a) * np.max(np.abs(x)) + np.max(np.abs(b)))
        assert np.max(np.abs(a @ x - b)) <= bound


def test_row_permutation_invariance():
    rng = np.random.default_rng(99)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        a = rng.uniform(-1, 1, (n, n)) + n * np.eye(n)
        b = rng.uniform(-1, 1, n)
        p = rng.permutation(n)
        x1 = lu_solve(lu_factor(a), b)
        x2 = lu_solve(lu_factor(a[p]), b[p])
        np.testing.assert_allclose(x1, x2, rtol=0, atol=1e-12)


@pytest.mark.parametrize("kind", list(NormKind))
def test_norm_of_zero(kind):
    assert norm(np.zeros(3), kind) == 0.0


def test_norm_values():
    assert norm(np.array([3.0, 4.0]), "l2") == 5.0
    assert norm(np.array([3.0, -4.0]), NormKind.INFINITY) == 4.0


@settings(max_examples=200, deadline=None)
@given(
    arrays(np.float64, st.integers(1, 6), elements=st.floats(-1e6, 1e6, allow_nan=False)),
    st.floats(-1e3, 1e3, allow_nan=False),
    st.sampled_from(list(NormKind)),
)
def test_norm_homogeneity(v, c, kind):
    lhs = norm(c * v, kind)
    rhs = abs(c) * norm(v, kind)
    assert lhs == pytest.approx(rhs, rel=1e-14, abs=1e-300)
