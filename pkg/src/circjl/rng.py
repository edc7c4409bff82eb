"""Seeded sources for the two random ingredients of a sketch.

Every stream is a Philox counter-based generator keyed through
``numpy.random.SeedSequence(value, spawn_key=(label, *path))``. Distinct
labels (or paths) give statistically independent streams, so redrawing
the sign stream never perturbs the Gaussian stream and per-trial seeds
can be derived from a master seed without caring about evaluation order.

Gaussians come from ``Generator.standard_normal`` (numpy's ziggurat
sampler); signs from ``Generator.integers(0, 2)`` mapped to -1/+1. Both
are pinned here because the frozen test vectors depend on them.
"""
import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigurationError, InvalidDimensionError

__all__ = [
    "Seed",
    "STREAM_A",
    "STREAM_KAPPA",
    "STREAM_POINTS",
    "STREAM_MC",
    "SEED_ENV",
    "derive_seed",
    "generator",
    "seed_from_env",
    "sample_complex_gaussian",
    "sample_rademacher",
]

STREAM_A = 0
STREAM_KAPPA = 1
STREAM_POINTS = 2
STREAM_MC = 3

SEED_ENV = "CIRCJL_SEED"

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    value: int
    stream: int = STREAM_A

    def __post_init__(self):
        if not 0 <= int(self.value) <= _U64:
            raise InvalidConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.value}")
        if int(self.stream) < 0:
            raise InvalidConfigurationError("stream label must be non-negative")

    def with_stream(self, stream):
        return Seed(self.value, stream)


def _coerce(seed, stream):
    if isinstance(seed, Seed):
        return seed
    return Seed(int(seed), stream)


def generator(seed, *path):
    """Philox generator for ``seed`` (a :class:`Seed` or bare int), optionally sub-keyed by ``path``."""
    seed = _coerce(seed, STREAM_A)
    ss = np.random.SeedSequence(int(seed.value), spawn_key=(int(seed.stream), *map(int, path)))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(master, index):
    """Child u64 seed value for trial ``index`` of a run seeded by ``master``."""
    value = master.value if isinstance(master, Seed) else int(master)
    ss = np.random.SeedSequence(int(value), spawn_key=(0xC1, int(index)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def seed_from_env(default=0):
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        raise InvalidConfigurationError(f"{SEED_ENV}={raw!r} is not an integer") from None
    Seed(value)
    return value


def _check_count(d):
    if int(d) < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    return int(d)


def sample_complex_gaussian(seed, d, size=None):
    """``d`` independent complex Gaussians ``alpha + i*beta``, ``E|a|^2 = 2``.

    With ``size`` given, returns a ``(size, d)`` block drawn from the same stream.
    """
    d = _check_count(d)
    rng = generator(_coerce(seed, STREAM_A))
    shape = (d, 2) if size is None else (int(size), d, 2)
    g = rng.standard_normal(shape)
    return g[..., 0] + 1j * g[..., 1]


def sample_rademacher(seed, d, size=None):
    """``d`` independent uniform signs as an ``int8`` array of -1/+1."""
    d = _check_count(d)
    rng = generator(_coerce(seed, STREAM_KAPPA))
    shape = (d,) if size is None else (int(size), d)
    bits = rng.integers(0, 2, size=shape, dtype=np.int8)
    return (2 * bits - 1).astype(np.int8)
