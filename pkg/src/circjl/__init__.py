"""Fast Johnson-Lindenstrauss embeddings from sign-preconditioned partial circulant matrices."""
from ._backend import BACKEND
from .circulant import (
    CirculantSketch,
    Mu,
    build_sketch,
    circ_apply_direct,
    circ_apply_fft,
    circulant_spectrum,
    diag_apply,
)
from .dft import dft_forward, dft_inverse
from .embed import EmbedConfig, embed_batch, embed_complex, embed_real
from .errors import (
    CircJLError,
    InvalidConfigurationError,
    InvalidDimensionError,
    NumericalFailureError,
    PreconditionError,
)
from .rng import Seed, sample_complex_gaussian, sample_rademacher

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CirculantSketch",
    "Mu",
    "build_sketch",
    "circ_apply_direct",
    "circ_apply_fft",
    "circulant_spectrum",
    "diag_apply",
    "dft_forward",
    "dft_inverse",
    "EmbedConfig",
    "embed_batch",
    "embed_complex",
    "embed_real",
    "CircJLError",
    "InvalidConfigurationError",
    "InvalidDimensionError",
    "NumericalFailureError",
    "PreconditionError",
    "Seed",
    "sample_complex_gaussian",
    "sample_rademacher",
]
