from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lcp_homotopy.errors import NotSymmetricError, RankDeficientError, SingularMatrixError
from lcp_homotopy.linalg import determinant, fd_jacobian, lu_factor, lu_solve, pinv_apply, symmetric_eigenvalues

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def square(n):
    return arrays(np.float64, (n, n), elements=finite)


@pytest.mark.parametrize(
    "a, b, x",
    [
        ([[2, 0], [0, 4]], [2, 8], [1, 2]),
        ([[0, 1], [1, 0]], [3, 5], [5, 3]),
        ([[1, 2, 0], [0, 1, 0], [0, 0, 2]], [5, 2, 4], [1, 2, 2]),
    ],
)
def test_lu_solve_examples(a, b, x):
    np.testing.assert_allclose(lu_solve(a, b), x, atol=1e-14)


def test_lu_solve_singular():
    with pytest.raises(SingularMatrixError):
        lu_solve([[1, 2], [2, 4]], [1, 2])


def test_lu_solve_shape_errors():
    with pytest.raises(ValueError):
        lu_solve(np.ones((2, 3)), [1, 2])
    with pytest.raises(ValueError):
        lu_solve(np.eye(2), [1, 2, 3])


def test_lu_tie_breaking_picks_first_row():
    f = lu_factor([[1.0, 2.0], [-1.0, 5.0]])
    assert f.perm.tolist() == [0, 1]


@given(a=square(4), b=arrays(np.float64, 4, elements=finite))
@settings(max_examples=60, deadline=None)
def test_lu_solve_residual(a, b):
    a = a + 12 * np.eye(4)  # diagonally dominant, so well-conditioned
    x = lu_solve(a, b)
    assert np.max(np.abs(a @ x - b)) <= 1e-10 * (1 + np.max(np.abs(b)))


@pytest.mark.parametrize(
    "a, d",
    [
        ([[-1, 2], [3, -1]], -5.0),
        ([[1, 2], [2, 4]], 0.0),
        ([[0, 1], [1, 0]], -1.0),
        (np.eye(3), 1.0),
    ],
)
def test_determinant_examples(a, d):
    assert determinant(a) == pytest.approx(d, abs=1e-14)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@given(a=square(3))
@settings(max_examples=80, deadline=None)
def test_determinant_matches_numpy(a):
    ref = np.linalg.det(a)
    assert determinant(a) == pytest.approx(ref, rel=1e-9, abs=1e-9 * (1 + np.abs(a).max() ** 3))


@given(a=square(3))
@settings(max_examples=60, deadline=None)
def test_determinant_transpose_and_swap(a):
    d = determinant(a)
    tol = 1e-9 * (1 + np.abs(a).max() ** 3)
    assert determinant(a.T) == pytest.approx(d, abs=tol)
    assert determinant(a[[1, 0, 2]]) == pytest.approx(-d, abs=tol)


def test_pinv_examples():
    np.testing.assert_allclose(pinv_apply([[1.0, 0.0, 0.0]], [2.0]), [2, 0, 0], atol=1e-15)
    np.testing.assert_allclose(pinv_apply([[1.0, 1.0]], [2.0]), [1, 1], atol=1e-15)
    with pytest.raises(RankDeficientError):
        pinv_apply([[1.0, 1.0], [2.0, 2.0]], [1.0, 2.0])


@given(j=arrays(np.float64, (3, 4), elements=finite), r=arrays(np.float64, 3, elements=finite))
@settings(max_examples=80, deadline=None)
def test_pinv_consistency_and_minimum_norm(j, r):
    s = np.linalg.svd(j, compute_uv=False)
    if s[-1] <= 1e-6 * max(s[0], 1e-300):
        return
    v = pinv_apply(j, r)
    assert np.max(np.abs(j @ v - r)) <= 1e-8 * (1 + np.abs(r).max())
    # minimum norm: v lies in the row space, orthogonal to the null space
    _, _, vt = np.linalg.svd(j)
    null = vt[3:]
    assert np.max(np.abs(null @ v)) <= 1e-8 * (1 + np.linalg.norm(v))


@pytest.mark.parametrize(
    "s, ev",
    [
        ([[2, 1], [1, 2]], [1, 3]),
        ([[1, 0], [0, -1]], [-1, 1]),
        ([[0, 0], [0, 0]], [0, 0]),
    ],
)
def test_eigenvalue_examples(s, ev):
    np.testing.assert_allclose(symmetric_eigenvalues(s), ev, atol=1e-14)


def test_eigenvalues_reject_asymmetric():
    with pytest.raises(NotSymmetricError):
        symmetric_eigenvalues([[1, 2], [0, 1]])


@given(a=square(5))
@settings(max_examples=60, deadline=None)
def test_eigenvalues_match_numpy(a):
    s = a + a.T
    ev = symmetric_eigenvalues(s)
    scale = 1 + np.linalg.norm(s)
    np.testing.assert_allclose(ev, np.linalg.eigvalsh(s), atol=1e-10 * scale)
    assert ev.sum() == pytest.approx(np.trace(s), abs=1e-10 * scale)


def test_eigenvalues_tiny_offdiagonal():
    s = np.array([[1.0, 1e-200], [1e-200, 2.0]])
    np.testing.assert_allclose(symmetric_eigenvalues(s), [1, 2])


def test_fd_jacobian_examples():
    np.testing.assert_allclose(fd_jacobian(lambda y: y**2, [1.0, 2.0]), np.diag([2.0, 4.0]), atol=1e-8)
    m = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    np.testing.assert_allclose(fd_jacobian(lambda y: m @ y, [0.3, -0.2]), m, atol=1e-9)
    with pytest.raises(ValueError):
        fd_jacobian(lambda y: y, [1.0], h=0.0)
