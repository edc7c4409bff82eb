"""Partial circulant matrices: construction, direct and FFT application, spectrum.

Entry ``(j, u)`` of the circulant generated by ``a`` is ``a[(u - j) % d]``,
so row ``j`` is ``a`` rotated right by ``j``. A partial circulant keeps a
subset of rows (the first ``k`` by default).
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _backend
from .dft import FourierMultiplier, as_complex_vec, dft_forward
from .errors import InvalidConfigurationError, InvalidDimensionError
from .rng import STREAM_A, STREAM_KAPPA, Seed, sample_complex_gaussian, sample_rademacher

__all__ = [
    "CirculantSketch",
    "Mu",
    "build_sketch",
    "validate_rows",
    "circ_apply_direct",
    "circ_apply_fft",
    "circulant_matrix",
    "circulant_spectrum",
    "diag_apply",
]


def validate_rows(rows, d, k=None):
    idx = np.asarray(rows, dtype=np.int64).ravel()
    if k is not None and idx.shape[0] != k:
        raise InvalidConfigurationError(f"expected {k} row indices, got {idx.shape[0]}")
    if idx.shape[0] == 0:
        raise InvalidConfigurationError("row subset is empty")
    if idx.min() < 0 or idx.max() >= d:
        raise InvalidConfigurationError(f"row indices must lie in [0, {d})")
    if np.unique(idx).shape[0] != idx.shape[0]:
        raise InvalidConfigurationError("row indices must be distinct")
    return idx


def _check_dims(d, k):
    if d < 1:
        raise InvalidConfigurationError(f"d must be >= 1, got {d}")
    if not 1 <= k <= d:
        raise InvalidConfigurationError(f"need 1 <= k <= d, got k={k}, d={d}")


@dataclass(frozen=True, eq=False)
class CirculantSketch:
    """The frozen random object behind one embedding.

    ``spectrum`` holds ``sqrt(d) * F_d a``, the eigenvalues of the full
    circulant, and is what the FFT apply path multiplies by.
    """

    a: np.ndarray
    kappa: np.ndarray
    d: int
    k: int
    rows: np.ndarray | None
    spectrum: np.ndarray
    seed: int | None = None

    @classmethod
    def from_arrays(cls, a, kappa, k=None, rows=None, seed=None):
        a = as_complex_vec(a, "a")
        kappa = np.asarray(kappa)
        if a.ndim != 1 or kappa.shape != a.shape:
            raise InvalidDimensionError("a and kappa must be 1-D of equal length")
        if not np.all(np.abs(kappa) == 1) or np.any(np.iscomplex(kappa)):
            raise InvalidConfigurationError("kappa entries must be exactly -1 or +1")
        d = a.shape[0]
        if rows is not None:
            rows = validate_rows(rows, d, k)
            k = rows.shape[0]
        elif k is None:
            k = d
        k = int(k)
        _check_dims(d, k)
        a = a.copy()
        kappa = kappa.real.astype(np.int8)
        spectrum = np.sqrt(d) * dft_forward(a)
        for arr in (a, kappa, spectrum) + ((rows,) if rows is not None else ()):
            arr.setflags(write=False)
        return cls(a=a, kappa=kappa, d=d, k=k, rows=rows, spectrum=spectrum, seed=seed)

    @property
    def row_indices(self):
        if self.rows is None:
            return np.arange(self.k, dtype=np.int64)
        return self.rows

    @cached_property
    def operator(self):
        """``M_a`` as a reusable FFT operator (full ``d`` outputs)."""
        return FourierMultiplier(self.spectrum)

    def dense(self):
        """Dense ``k x d`` partial circulant. For tests and small ``d`` only."""
        return circulant_matrix(self.a, self.row_indices)


def build_sketch(d, k, seed=0, rows=None):
    """Draw ``a`` and ``kappa`` for a ``k x d`` sketch from ``seed``.

    ``a`` comes from the a-stream and ``kappa`` from the kappa-stream of the
    same seed value, so the pair is reproducible from ``(d, seed)`` alone.
    """
    d, k = int(d), int(k)
    _check_dims(d, k)
    value = seed.value if isinstance(seed, Seed) else int(seed)
    if rows is not None:
        rows = validate_rows(rows, d, k)
    a = sample_complex_gaussian(Seed(value, STREAM_A), d)
    kappa = sample_rademacher(Seed(value, STREAM_KAPPA), d)
    return CirculantSketch.from_arrays(a, kappa, k=k, rows=rows, seed=value)


def _rows_or_all(rows, d):
    if rows is None:
        return np.arange(d, dtype=np.int64)
    return validate_rows(rows, d)


def circ_apply_direct(a, x, rows=None):
    """``sum_u a[(u - j) % d] * x[u]`` for each ``j`` in ``rows``; O(len(rows) * d)."""
    a = as_complex_vec(a, "a")
    x = as_complex_vec(x)
    if a.ndim != 1 or x.ndim != 1:
        raise InvalidDimensionError("circ_apply_direct takes 1-D a and x")
    if a.shape != x.shape:
        raise InvalidDimensionError(f"length mismatch: a has {a.shape[0]}, x has {x.shape[0]}")
    idx = _rows_or_all(rows, a.shape[0])
    return _backend.circ_direct(np.ascontiguousarray(a), np.ascontiguousarray(x), idx)


def circ_apply_fft(sketch_or_a, x, rows=None):
    """Apply the (partial) circulant through ``F diag(sqrt(d) F a) F^{-1}``.

    ``sketch_or_a`` is a :class:`CirculantSketch` (its rows are used unless
    ``rows`` overrides them) or a bare first row ``a``. ``x`` may be a
    stack of row vectors.
    """
    if isinstance(sketch_or_a, CirculantSketch):
        op = sketch_or_a.operator
        d = sketch_or_a.d
        idx = sketch_or_a.row_indices if rows is None else validate_rows(rows, d)
    else:
        a = as_complex_vec(sketch_or_a, "a")
        if a.ndim != 1:
            raise InvalidDimensionError("a must be 1-D")
        d = a.shape[0]
        op = FourierMultiplier(np.sqrt(d) * dft_forward(a))
        idx = _rows_or_all(rows, d)
    x = as_complex_vec(x)
    if x.shape[-1] != d:
        raise InvalidDimensionError(f"length mismatch: operator has d={d}, x has {x.shape[-1]}")
    full = op(x)
    if idx.shape[0] == d and np.array_equal(idx, np.arange(d)):
        return full
    return full[..., idx]


def circulant_matrix(a, rows=None):
    a = as_complex_vec(a, "a")
    d = a.shape[0]
    idx = _rows_or_all(rows, d)
    u = np.arange(d)
    return a[(u[None, :] - idx[:, None]) % d]


def circulant_spectrum(a):
    """Singular values ``sqrt(d) * |F_d a|`` of the full circulant, indexed by frequency."""
    a = as_complex_vec(a, "a")
    if a.ndim != 1:
        raise InvalidDimensionError("a must be 1-D")
    return np.sqrt(a.shape[0]) * np.abs(dft_forward(a))


def diag_apply(kappa, x):
    kappa = np.asarray(kappa)
    x = as_complex_vec(x)
    if kappa.ndim != 1 or kappa.shape[0] != x.shape[-1]:
        raise InvalidDimensionError(f"length mismatch: kappa has {kappa.shape}, x has {x.shape}")
    return x * kappa


@dataclass(frozen=True)
class Mu:
    """Squared singular values of a proof matrix, sorted descending, with norms."""

    mu: np.ndarray
    l1: float
    l2: float
    linf: float

    @classmethod
    def from_values(cls, values):
        mu = np.sort(np.asarray(values, dtype=np.float64))[::-1]
        if np.any(mu < 0):
            raise InvalidConfigurationError("mu entries must be non-negative")
        mu = mu.copy()
        mu.setflags(write=False)
        if mu.size == 0:
            return cls(mu, 0.0, 0.0, 0.0)
        return cls(mu, float(mu.sum()), float(np.sqrt(np.sum(mu * mu))), float(mu.max()))

    @property
    def k(self):
        return self.mu.shape[0]
