import math

import numpy as np
import pytest

from circjl.errors import NumericalFailureError, PreconditionError
from circjl.linalg import gram_svd, jacobi_eigh

from conftest import cvec


def random_hermitian(rng, n):
    B = cvec(rng, n, n)
    return B + B.conj().T


def closed_form_eigenvalues(H):
    """Roots of the characteristic polynomial for n <= 3, descending."""
    n = H.shape[0]
    if n == 1:
        return np.array([H[0, 0].real])
    if n == 2:
        a, c, b = H[0, 0].real, H[1, 1].real, abs(H[0, 1])
        r = math.sqrt(((a - c) / 2) ** 2 + b * b)
        return np.array([(a + c) / 2 + r, (a + c) / 2 - r])
    # trigonometric solution of the depressed cubic (Smith 1961)
    q = np.trace(H).real / 3
    p1 = abs(H[0, 1]) ** 2 + abs(H[0, 2]) ** 2 + abs(H[1, 2]) ** 2
    p2 = sum((H[i, i].real - q) ** 2 for i in range(3)) + 2 * p1
    p = math.sqrt(p2 / 6)
    B = (H - q * np.eye(3)) / p
    r = np.linalg.det(B).real / 2
    phi = math.acos(min(1.0, max(-1.0, r))) / 3
    e1 = q + 2 * p * math.cos(phi)
    e3 = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    return np.array([e1, 3 * q - e1 - e3, e3])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closed_form_small(n, rng):
    for _ in range(20):
        H = random_hermitian(rng, n)
        w, _ = jacobi_eigh(H)
        np.testing.assert_allclose(w, closed_form_eigenvalues(H), atol=1e-12 * max(1, np.abs(H).max()))


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_trace_and_determinant(n, rng):
    H = random_hermitian(rng, n) / math.sqrt(n)
    w, V = jacobi_eigh(H)
    assert abs(w.sum() - np.trace(H).real) <= 1e-9 * max(1, abs(np.trace(H)))
    det = np.linalg.det(H).real
    assert abs(np.prod(w) - det) <= 1e-9 * max(1, abs(det))
    assert np.all(np.diff(w) <= 0)
    np.testing.assert_allclose(V.conj().T @ V, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(H @ V, V * w, atol=1e-10)


def test_diagonal_and_zero():
    w, V = jacobi_eigh(np.diag([1.0, 3.0, 2.0]))
    np.testing.assert_array_equal(w, [3, 2, 1])
    w, _ = jacobi_eigh(np.zeros((3, 3)))
    np.testing.assert_array_equal(w, 0)


def test_rejects_non_hermitian():
    with pytest.raises(PreconditionError):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(PreconditionError):
        jacobi_eigh(np.ones((2, 3)))


def test_iteration_budget(rng):
    with pytest.raises(NumericalFailureError):
        jacobi_eigh(random_hermitian(rng, 12), max_sweeps=1)


def test_gram_svd_matches_numpy(rng):
    Y = cvec(rng, 6, 40)
    U, s, Vh = gram_svd(Y)
    np.testing.assert_allclose(s, np.linalg.svd(Y, compute_uv=False), rtol=1e-10)
    np.testing.assert_allclose(Vh @ Vh.conj().T, np.eye(6), atol=1e-10)
    np.testing.assert_allclose(U @ np.diag(s) @ Vh, Y, atol=1e-10)


def test_gram_svd_drops_null_directions(rng):
    y = cvec(rng, 30)
    Y = np.vstack([y, 2 * y, cvec(rng, 30)])
    U, s, Vh = gram_svd(Y)
    assert s.shape == (3,) and Vh.shape == (2, 30)
    assert s[-1] <= 1e-6 * s[0]
