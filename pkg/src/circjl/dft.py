"""Unitary discrete Fourier transform of arbitrary length.

Both directions carry the symmetric ``1/sqrt(d)`` factor::

    forward(x)[xi] = d**-0.5 * sum_u x[u] * exp(-2j*pi*u*xi/d)
    inverse(y)[xi] = d**-0.5 * sum_u y[u] * exp(+2j*pi*u*xi/d)

so the transform is an isometry and the inverse matrix is the conjugate
transpose of the forward one. This is *not* the ``numpy.fft`` convention
(unnormalized forward, ``1/d`` inverse).

Powers of two go through radix-2/radix-4 kernels; every other length is
reduced to a power-of-two circular convolution (Bluestein's chirp-z
trick). Functions accept a single vector or a 2-D stack of row vectors;
the transform always runs along the last axis.
"""
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import InvalidDimensionError

__all__ = [
    "as_complex_vec",
    "dft_forward",
    "dft_inverse",
    "dft_direct",
    "dft_matrix",
    "FourierMultiplier",
]


def as_complex_vec(x, name="x"):
    """Validate and convert to a complex128 array (1-D or stacked 2-D)."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim not in (1, 2):
        raise InvalidDimensionError(f"{name} must be 1-D or 2-D, got shape {arr.shape}")
    if arr.shape[-1] == 0:
        raise InvalidDimensionError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidDimensionError(f"{name} contains NaN or Inf")
    return arr


def is_pow2(n):
    return n > 0 and n & (n - 1) == 0


def _readonly(a):
    a.setflags(write=False)
    return a


class _Pow2Plan:
    """Twiddle tables and bit-reversal permutation for one power-of-two length.

    Twiddles are stored stage by stage: the stage with butterfly span ``m``
    occupies ``tw[m//2 - 1 : m - 1]`` and holds ``exp(-2j*pi*j/m)``.
    """

    def __init__(self, n):
        self.n = n
        bits = n.bit_length() - 1
        parts = [np.exp(-2j * np.pi * np.arange(m // 2) / m) for m in (1 << s for s in range(1, bits + 1))]
        tw = np.concatenate(parts) if parts else np.zeros(0, dtype=np.complex128)
        self.tw_fwd = _readonly(tw)
        self.tw_inv = _readonly(np.conj(tw))
        idx = np.arange(n)
        rev = np.zeros(n, dtype=np.int64)
        for b in range(bits):
            rev |= ((idx >> b) & 1) << (bits - 1 - b)
        self.bitrev = _readonly(rev)

    def dif(self, buf, inverse=False):
        # natural -> bit-reversed, in place, unnormalized
        if inverse:
            return _backend.fft_dif_rows(buf, self.tw_inv, 1.0)
        return _backend.fft_dif_rows(buf, self.tw_fwd, -1.0)

    def dit(self, buf, inverse=False):
        # bit-reversed -> natural, in place, unnormalized
        if inverse:
            return _backend.fft_dit_rows(buf, self.tw_inv, 1.0)
        return _backend.fft_dit_rows(buf, self.tw_fwd, -1.0)


@lru_cache(maxsize=None)
def _pow2_plan(n):
    # first builder wins; concurrent duplicates are harmless
    return _Pow2Plan(n)


class _BluesteinPlan:
    def __init__(self, d):
        self.d = d
        m = 1 << (2 * d - 1).bit_length()
        self.pow2 = _pow2_plan(m)
        n = np.arange(d, dtype=np.int64)
        # reduce n^2 mod 2d before scaling so the phase stays accurate for large d
        chirp = np.exp(-1j * np.pi * ((n * n) % (2 * d)) / d)
        b = np.zeros((1, m), dtype=np.complex128)
        b[0, :d] = np.conj(chirp)
        b[0, m - d + 1:] = np.conj(chirp[1:])[::-1]
        # kept in bit-reversed order so the convolution needs no permutation
        self.kernel_br = _readonly(self.pow2.dif(b)[0] / m)
        self.chirp = _readonly(chirp)

    def transform(self, rows, inverse=False):
        d = self.d
        chirp = np.conj(self.chirp) if inverse else self.chirp
        kernel = np.conj(self.kernel_br) if inverse else self.kernel_br
        buf = np.zeros((rows.shape[0], self.pow2.n), dtype=np.complex128)
        buf[:, :d] = rows * chirp
        self.pow2.dif(buf)
        buf *= kernel
        self.pow2.dit(buf, inverse=True)
        return buf[:, :d] * chirp


@lru_cache(maxsize=None)
def _bluestein_plan(d):
    return _BluesteinPlan(d)


def _unnormalized(rows, inverse):
    d = rows.shape[1]
    if d == 1:
        return rows.copy()
    if is_pow2(d):
        plan = _pow2_plan(d)
        buf = np.array(rows, dtype=np.complex128, order="C", copy=True)
        plan.dif(buf, inverse)
        return buf[:, plan.bitrev]
    return _bluestein_plan(d).transform(rows, inverse)


def _transform(x, inverse):
    arr = as_complex_vec(x)
    d = arr.shape[-1]
    rows = arr.reshape(-1, d)
    out = _unnormalized(rows, inverse)
    out /= np.sqrt(d)
    return out.reshape(arr.shape)


def dft_forward(x):
    """Unitary forward DFT of ``x`` (vector or stack of row vectors)."""
    return _transform(x, inverse=False)


def dft_inverse(y):
    """Unitary inverse DFT; its matrix is the conjugate transpose of the forward one."""
    return _transform(y, inverse=True)


class FourierMultiplier:
    """The operator ``F diag(m) F^{-1}`` for a fixed multiplier ``m``.

    For power-of-two lengths the inverse transform runs in decimation-in-
    frequency form and the forward one in decimation-in-time form, with
    ``m`` pre-permuted into bit-reversed order, so no data permutation
    happens per call.
    """

    def __init__(self, multiplier):
        m = as_complex_vec(multiplier, "multiplier")
        if m.ndim != 1:
            raise InvalidDimensionError("multiplier must be 1-D")
        self.d = d = m.shape[0]
        self.multiplier = _readonly(m.copy())
        # the two unitary factors contribute 1/sqrt(d) each
        if is_pow2(d) and d > 1:
            self._plan = _pow2_plan(d)
            self._m_br = _readonly(m[self._plan.bitrev] / d)
        else:
            self._plan = None

    def __call__(self, x):
        arr = as_complex_vec(x)
        if arr.shape[-1] != self.d:
            raise InvalidDimensionError(f"expected length {self.d}, got {arr.shape[-1]}")
        if self._plan is None:
            return dft_forward(self.multiplier * dft_inverse(arr))
        buf = np.array(arr.reshape(-1, self.d), dtype=np.complex128, order="C", copy=True)
        self._plan.dif(buf, inverse=True)
        buf *= self._m_br
        self._plan.dit(buf)
        return buf.reshape(arr.shape)


def dft_matrix(d, inverse=False):
    """Dense ``d x d`` matrix of the unitary transform (test oracle)."""
    if d < 1:
        raise InvalidDimensionError("d must be >= 1")
    u = np.arange(d)
    sign = 1.0 if inverse else -1.0
    phase = (np.outer(u, u) % d) / d
    return np.exp(sign * 2j * np.pi * phase) / np.sqrt(d)


def dft_direct(x, inverse=False):
    """O(d^2) direct summation of the defining formula. Oracle only."""
    arr = as_complex_vec(x)
    return arr @ dft_matrix(arr.shape[-1], inverse).T
