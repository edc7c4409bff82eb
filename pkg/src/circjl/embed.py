"""The embedding maps.

``embed_complex`` sends ``x`` in C^d to ``M_{a,k} D_kappa x / sqrt(2k)``. The
``1/sqrt(2k)`` factor matches ``E|a_u|^2 = 2``, so ``E||f(x)||^2 = ||x||^2``.

``embed_real`` handles R^{2d} by packing ``x`` into ``z = x[:d] + i*x[d:]``,
embedding ``z`` and returning ``(Re w, Im w)``. That is the same arithmetic
as the real ``2k x 2d`` block matrix ``[[M_re, -M_im], [M_im, M_re]]``
acting on ``diag(D, D) x``, without ever forming it.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .circulant import CirculantSketch, circ_apply_direct, circ_apply_fft
from .dft import as_complex_vec
from .errors import InvalidConfigurationError, InvalidDimensionError

__all__ = [
    "EmbedConfig",
    "embed_complex",
    "embed_real",
    "embed_batch",
    "embed_real_batch",
    "pack_real",
    "unpack_real",
    "target_dim",
    "implied_multiplier",
]


@dataclass(frozen=True)
class EmbedConfig:
    """Parameters of one JL instance.

    ``n < d`` is allowed (with a warning): the guarantee is stated for
    ``n >= d`` but nothing in the construction needs it.
    """

    epsilon: float
    n: int
    d: int
    k: int

    def __post_init__(self):
        if not 0.0 < self.epsilon < 0.5:
            raise InvalidConfigurationError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        if self.n < 1:
            raise InvalidConfigurationError("n must be >= 1")
        if not 1 <= self.k <= self.d:
            raise InvalidConfigurationError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")
        if self.n < self.d:
            warnings.warn(
                f"n={self.n} < d={self.d}: outside the n >= d regime of the guarantee",
                stacklevel=3,
            )


def target_dim(epsilon, n, multiplier, d=None):
    """``ceil(multiplier * log(n)^2 / epsilon^2)``, clipped to ``[1, d]``."""
    k = math.ceil(multiplier * math.log(max(n, 2)) ** 2 / epsilon**2)
    k = max(k, 1)
    return min(k, d) if d is not None else k


def implied_multiplier(k, epsilon, n):
    """Inverse of :func:`target_dim`: the multiplier a given ``k`` corresponds to."""
    return k * epsilon**2 / math.log(max(n, 2)) ** 2


def _apply(sketch, z, method):
    if method == "fft":
        return circ_apply_fft(sketch, z)
    if method == "direct":
        if z.ndim == 1:
            return circ_apply_direct(sketch.a, z, sketch.row_indices)
        return np.stack([circ_apply_direct(sketch.a, row, sketch.row_indices) for row in z])
    raise InvalidConfigurationError(f"unknown method {method!r}")


def embed_complex(sketch: CirculantSketch, x, method="fft"):
    x = as_complex_vec(x)
    if x.ndim != 1:
        raise InvalidDimensionError("embed_complex takes a single vector; use embed_batch")
    if x.shape[0] != sketch.d:
        raise InvalidDimensionError(f"expected length {sketch.d}, got {x.shape[0]}")
    return _apply(sketch, x * sketch.kappa, method) / math.sqrt(2 * sketch.k)


def embed_batch(sketch: CirculantSketch, points, method="fft"):
    """Embed every point; returns a ``(len(points), k)`` array in input order."""
    if isinstance(points, np.ndarray) and points.ndim == 2:
        if points.shape[1] != sketch.d:
            raise InvalidDimensionError(f"points have length {points.shape[1]}, expected {sketch.d}")
        stack = as_complex_vec(points, "points")
    else:
        points = list(points)
        if not points:
            return np.zeros((0, sketch.k), dtype=np.complex128)
        stack = np.empty((len(points), sketch.d), dtype=np.complex128)
        for i, p in enumerate(points):
            p = np.asarray(p)
            if p.ndim != 1 or p.shape[0] != sketch.d:
                raise InvalidDimensionError(
                    f"point {i} has shape {p.shape}, expected ({sketch.d},)"
                )
            stack[i] = as_complex_vec(p, f"point {i}")
    if stack.shape[0] == 0:
        return np.zeros((0, sketch.k), dtype=np.complex128)
    return _apply(sketch, stack * sketch.kappa, method) / math.sqrt(2 * sketch.k)


def pack_real(x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] % 2:
        raise InvalidDimensionError(f"real input must have even length, got {x.shape[-1]}")
    if not np.all(np.isfinite(x)):
        raise InvalidDimensionError("real input contains NaN or Inf")
    half = x.shape[-1] // 2
    return x[..., :half] + 1j * x[..., half:]


def unpack_real(w):
    w = np.asarray(w)
    return np.concatenate([w.real, w.imag], axis=-1)


def embed_real(sketch: CirculantSketch, x, method="fft"):
    """Map R^{2d} -> R^{2k} through complex packing."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InvalidDimensionError("embed_real takes a single vector")
    if x.shape[0] != 2 * sketch.d:
        raise InvalidDimensionError(f"expected length {2 * sketch.d}, got {x.shape[0]}")
    return unpack_real(embed_complex(sketch, pack_real(x), method))


def embed_real_batch(sketch: CirculantSketch, points, method="fft"):
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 * sketch.d:
        raise InvalidDimensionError(f"points must have shape (n, {2 * sketch.d}), got {pts.shape}")
    return unpack_real(embed_batch(sketch, pack_real(pts), method))
