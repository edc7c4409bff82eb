"""Kernel backend selection.

The numba kernels are used unless ``CIRCJL_DISABLE_NUMBA`` is set to a
truthy value (``1``, ``true``, ``yes``) or numba cannot be imported.
"""
import os

from . import _kernels_numpy

_FLAG = "CIRCJL_DISABLE_NUMBA"


def _numba_disabled():
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


if _numba_disabled():
    kernels = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels
        BACKEND = "numba"
    except ImportError:  # pragma: no cover
        kernels = _kernels_numpy
        BACKEND = "numpy"

fft_dif_rows = kernels.fft_dif_rows
fft_dit_rows = kernels.fft_dit_rows
circ_direct = kernels.circ_direct
jacobi_hermitian = kernels.jacobi_hermitian
