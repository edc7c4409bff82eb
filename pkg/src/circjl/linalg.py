"""Self-contained Hermitian eigensolver (cyclic Jacobi) and Gram-based SVD."""
import numpy as np

from . import _backend
from .errors import NumericalFailureError, PreconditionError

__all__ = ["jacobi_eigh", "gram_svd"]


def jacobi_eigh(A, tol=1e-14, max_sweeps=60):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with eigenvalues sorted descending and ``V[:, i]``
    the eigenvector of ``w[i]``. Raises :class:`NumericalFailureError` if
    the off-diagonal mass has not dropped below ``tol * ||A||_F`` after
    ``max_sweeps`` sweeps.
    """
    A = np.array(A, dtype=np.complex128, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise PreconditionError("matrix contains NaN or Inf")
    scale = np.abs(A).max() if A.size else 0.0
    if np.abs(A - A.conj().T).max(initial=0.0) > 1e-12 * max(scale, 1e-300):
        raise PreconditionError("matrix is not Hermitian")
    # symmetrize away rounding so the rotations see an exactly Hermitian input
    A = 0.5 * (A + A.conj().T)
    w, V, sweeps = _backend.jacobi_hermitian(A, float(tol), int(max_sweeps))
    if sweeps < 0:
        raise NumericalFailureError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(w)[::-1]
    return w[order], V[:, order]


def gram_svd(Y, rel_cut=1e-10):
    """Thin SVD of a wide ``k x d`` matrix through its ``k x k`` Gram matrix.

    Returns ``(U, s, Vh)``: ``s`` are all ``k`` singular values (descending),
    ``U`` their left vectors, and ``Vh = diag(1/s) U* Y`` only for the
    singular values above ``rel_cut * s.max()``.
    """
    Y = np.asarray(Y, dtype=np.complex128)
    w, U = jacobi_eigh(Y @ Y.conj().T)
    s = np.sqrt(np.clip(w, 0.0, None))
    keep = s > rel_cut * s.max() if s.size and s.max() > 0 else np.zeros(s.shape, bool)
    Vh = (U[:, keep].conj().T @ Y) / s[keep][:, None]
    return U, s, Vh
