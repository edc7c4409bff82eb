import numpy as np
import pytest

from circjl.errors import InvalidConfigurationError, InvalidDimensionError
from circjl.rng import (
    STREAM_A,
    STREAM_KAPPA,
    Seed,
    derive_seed,
    sample_complex_gaussian,
    sample_rademacher,
    seed_from_env,
)

N = 100_000


def test_gaussian_frozen_vector():
    # pins Philox + ziggurat output; changing either breaks every stored sketch
    expected = np.array([
        -0.8089464254932278 - 0.6045031916325795j,
        1.138839854038639 - 1.6046824989533017j,
        0.4718579189483166 + 0.7255273097688683j,
        0.36622882638744253 - 0.5935277214903544j,
    ])
    np.testing.assert_array_equal(sample_complex_gaussian(Seed(12345, STREAM_A), 4), expected)


def test_rademacher_frozen_vector():
    expected = np.array([-1, 1, 1, 1, -1, 1, -1, -1], dtype=np.int8)
    np.testing.assert_array_equal(sample_rademacher(Seed(12345, STREAM_KAPPA), 8), expected)


def test_repeat_calls_identical():
    s = Seed(99, STREAM_A)
    np.testing.assert_array_equal(sample_complex_gaussian(s, 4), sample_complex_gaussian(s, 4))
    np.testing.assert_array_equal(sample_rademacher(s, 8), sample_rademacher(s, 8))


def test_streams_are_disjoint():
    a_before = sample_complex_gaussian(Seed(5, STREAM_A), 32)
    k1 = sample_rademacher(Seed(5, STREAM_KAPPA), 32)
    k2 = sample_rademacher(Seed(5, 7), 32)
    np.testing.assert_array_equal(sample_complex_gaussian(Seed(5, STREAM_A), 32), a_before)
    assert not np.array_equal(k1, k2)
    assert not np.array_equal(sample_complex_gaussian(Seed(5, STREAM_KAPPA), 32), a_before)


def test_gaussian_second_moment():
    a = sample_complex_gaussian(Seed(1), N)
    # Var|a|^2 = 4 for alpha^2 + beta^2 with standard normal parts
    assert abs(np.mean(np.abs(a) ** 2) - 2.0) <= 3 * np.sqrt(4.0 / N)


def test_gaussian_parts_uncorrelated():
    a = sample_complex_gaussian(Seed(2), N)
    cov = np.cov(np.vstack([a.real, a.imag]))
    assert abs(cov[0, 1]) <= 0.02
    assert abs(cov[0, 0] - 1) <= 0.02 and abs(cov[1, 1] - 1) <= 0.02


def test_gaussian_tail_fraction():
    alpha = sample_complex_gaussian(Seed(3), N).real
    p = 0.15865525393145707  # Phi(-1)
    assert abs(np.mean(alpha > 1.0) - p) <= 3 * np.sqrt(p * (1 - p) / N)


def test_rademacher_balance():
    s = sample_rademacher(Seed(4), N)
    assert set(np.unique(s)) == {-1, 1}
    assert abs(s.mean()) <= 0.01
    assert abs(np.mean(s == 1) - 0.5) <= 3 * np.sqrt(0.25 / N)


def test_block_draws():
    assert sample_complex_gaussian(Seed(1), 6, size=3).shape == (3, 6)
    assert sample_rademacher(Seed(1), 6, size=3).shape == (3, 6)


@pytest.mark.parametrize("fn", [sample_complex_gaussian, sample_rademacher])
def test_zero_dimension_rejected(fn):
    with pytest.raises(InvalidDimensionError):
        fn(Seed(0), 0)


def test_seed_range():
    Seed(2**64 - 1)
    with pytest.raises(InvalidConfigurationError):
        Seed(2**64)
    with pytest.raises(InvalidConfigurationError):
        Seed(-1)


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(7, 0) == derive_seed(7, 0)
    children = {derive_seed(7, i) for i in range(100)}
    assert len(children) == 100
    assert all(0 <= c < 2**64 for c in children)


def test_seed_from_env(monkeypatch):
    monkeypatch.delenv("CIRCJL_SEED", raising=False)
    assert seed_from_env(3) == 3
    monkeypatch.setenv("CIRCJL_SEED", "42")
    assert seed_from_env() == 42
    monkeypatch.setenv("CIRCJL_SEED", "nope")
    with pytest.raises(InvalidConfigurationError):
        seed_from_env()
