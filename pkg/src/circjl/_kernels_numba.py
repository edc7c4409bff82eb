"""numba-compiled versions of the hot kernels (see ``_kernels_numpy``)."""
import math

import numpy as np
from numba import njit

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _log2(n):
    b = 0
    while (1 << b) < n:
        b += 1
    return b


@njit(fastmath=True, **_opts)
def fft_dif_rows(x, tw, rot):
    """Natural-order in, bit-reversed out. Radix-4 passes, one radix-2 if needed.

    ``rot`` is -1.0 for the forward kernel (multiply by -i) and +1.0 for the
    conjugate one; ``tw`` must be the matching twiddle table.
    """
    rows, n = x.shape
    odd = _log2(n) % 2 == 1
    for r in range(rows):
        v = x[r]
        m = n
        while m >= 4:
            q = m // 4
            o1 = m // 2 - 1
            o2 = m // 4 - 1
            for start in range(0, n, m):
                for j in range(q):
                    w = tw[o1 + j]
                    u = tw[o2 + j]
                    p0 = start + j
                    a0 = v[p0]
                    a1 = v[p0 + q]
                    a2 = v[p0 + 2 * q]
                    a3 = v[p0 + 3 * q]
                    b0 = a0 + a2
                    b2 = (a0 - a2) * w
                    b1 = a1 + a3
                    f = (a1 - a3) * w
                    b3 = complex(-rot * f.imag, rot * f.real)
                    v[p0] = b0 + b1
                    v[p0 + q] = (b0 - b1) * u
                    v[p0 + 2 * q] = b2 + b3
                    v[p0 + 3 * q] = (b2 - b3) * u
            m //= 4
        if odd:
            for s in range(0, n, 2):
                a = v[s]
                b = v[s + 1]
                v[s] = a + b
                v[s + 1] = a - b
    return x


@njit(fastmath=True, **_opts)
def fft_dit_rows(x, tw, rot):
    """Bit-reversed in, natural-order out. Inverse layout of ``fft_dif_rows``."""
    rows, n = x.shape
    odd = _log2(n) % 2 == 1
    for r in range(rows):
        v = x[r]
        m = 2
        if odd:
            for s in range(0, n, 2):
                a = v[s]
                b = v[s + 1]
                v[s] = a + b
                v[s + 1] = a - b
            m = 4
        # merge spans m/2 -> m -> 2m in one pass
        while 2 * m <= n:
            h = m // 2
            o1 = h - 1
            o2 = m - 1
            for start in range(0, n, 2 * m):
                for j in range(h):
                    w1 = tw[o1 + j]
                    w2 = tw[o2 + j]
                    p0 = start + j
                    a0 = v[p0]
                    a1 = v[p0 + h] * w1
                    a2 = v[p0 + m]
                    a3 = v[p0 + m + h] * w1
                    b0 = a0 + a1
                    b1 = a0 - a1
                    b2 = (a2 + a3) * w2
                    f = (a2 - a3) * w2
                    b3 = complex(-rot * f.imag, rot * f.real)
                    v[p0] = b0 + b2
                    v[p0 + m] = b0 - b2
                    v[p0 + h] = b1 + b3
                    v[p0 + m + h] = b1 - b3
            m *= 4
    return x


@njit(**_opts)
def circ_direct(a, x, rows):
    d = a.shape[0]
    out = np.empty(rows.shape[0], dtype=np.complex128)
    for i in range(rows.shape[0]):
        j = rows[i]
        acc = 0j
        # split the wrap-around so the inner loops stay branch-free
        for v in range(d - j):
            acc += a[v] * x[v + j]
        for v in range(d - j, d):
            acc += a[v] * x[v + j - d]
        out[i] = acc
    return out


@njit(**_opts)
def _offnorm(A):
    n = A.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += A[i, j].real ** 2 + A[i, j].imag ** 2
    return np.sqrt(s)


@njit(**_opts)
def jacobi_hermitian(A, tol, max_sweeps):
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += A[i, j].real ** 2 + A[i, j].imag ** 2
    scale = np.sqrt(scale)
    evals = np.empty(n)
    if scale == 0.0:
        evals[:] = 0.0
        return evals, V, 0
    status = -1
    for sweep in range(max_sweeps + 1):
        if _offnorm(A) <= tol * scale:
            status = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                e = apq / r
                ec = np.conj(e)
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                sgn = 1.0 if tau >= 0 else -1.0
                t = sgn / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    ap = A[i, p]
                    aq = A[i, q]
                    A[i, p] = c * ap - s * ec * aq
                    A[i, q] = s * e * ap + c * aq
                for i in range(n):
                    ap = A[p, i]
                    aq = A[q, i]
                    A[p, i] = c * ap - s * e * aq
                    A[q, i] = s * ec * ap + c * aq
                A[p, q] = 0.0
                A[q, p] = 0.0
                for i in range(n):
                    vp = V[i, p]
                    vq = V[i, q]
                    V[i, p] = c * vp - s * ec * vq
                    V[i, q] = s * e * vp + c * vq
    for i in range(n):
        evals[i] = A[i, i].real
    return evals, V, status
