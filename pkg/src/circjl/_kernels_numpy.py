"""Pure-numpy versions of the hot kernels.

Each function here has a numba twin in ``_kernels_numba`` with the same
signature and the same output up to rounding.
"""
import numpy as np


def fft_dif_rows(x, tw, rot):
    """Radix-2 decimation in frequency: natural order in, bit-reversed out.

    ``rot`` is accepted for signature parity with the numba kernel; the
    radix-2 passes read everything they need from ``tw``.
    """
    rows, n = x.shape
    m = n
    while m >= 2:
        half = m // 2
        w = tw[half - 1:m - 1]
        v = x.reshape(rows, n // m, m)
        a = v[:, :, :half].copy()
        b = v[:, :, half:].copy()
        v[:, :, :half] = a + b
        v[:, :, half:] = (a - b) * w
        m //= 2
    return x


def fft_dit_rows(x, tw, rot):
    """Radix-2 decimation in time: bit-reversed in, natural order out."""
    rows, n = x.shape
    m = 2
    while m <= n:
        half = m // 2
        w = tw[half - 1:m - 1]
        v = x.reshape(rows, n // m, m)
        lo = v[:, :, :half].copy()
        hi = v[:, :, half:] * w
        v[:, :, :half] = lo + hi
        v[:, :, half:] = lo - hi
        m *= 2
    return x


def circ_direct(a, x, rows):
    # output_j = sum_u a[(u - j) % d] x[u] = sum_v a[v] x[(v + j) % d]
    out = np.empty(len(rows), dtype=np.complex128)
    for i, j in enumerate(rows):
        out[i] = np.dot(a, np.roll(x, -int(j)))
    return out


def _offnorm(A):
    off = A - np.diag(np.diag(A))
    return np.sqrt(np.sum(off.real**2 + off.imag**2))


def jacobi_hermitian(A, tol, max_sweeps):
    """Cyclic Jacobi on a Hermitian matrix. Returns (eigenvalues, V, sweeps).

    ``A`` is overwritten. ``sweeps == -1`` signals non-convergence.
    """
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = np.sqrt(np.sum(np.abs(A) ** 2))
    if scale == 0.0:
        return np.zeros(n), V, 0
    for sweep in range(max_sweeps):
        if _offnorm(A) <= tol * scale:
            return np.diag(A).real.copy(), V, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                e = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J acts on columns p, q: [[c, s e], [-s conj(e), c]]
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * np.conj(e) * cq
                A[:, q] = s * e * cp + c * cq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * e * rq
                A[q, :] = s * np.conj(e) * rp + c * rq
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * np.conj(e) * vq
                V[:, q] = s * e * vp + c * vq
    if _offnorm(A) <= tol * scale:
        return np.diag(A).real.copy(), V, max_sweeps
    return np.diag(A).real.copy(), V, -1
