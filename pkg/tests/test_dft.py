import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circjl.dft import FourierMultiplier, dft_direct, dft_forward, dft_inverse, dft_matrix
from circjl.errors import InvalidDimensionError

from conftest import cvec


def test_delta_transforms_to_constant():
    np.testing.assert_allclose(dft_forward([1, 0, 0, 0]), [0.5] * 4, atol=1e-15)


def test_constant_transforms_to_scaled_delta():
    np.testing.assert_allclose(dft_forward([1, 1, 1, 1]), [2, 0, 0, 0], atol=1e-15)


def test_length_three_against_direct_summation():
    # direct summation in 30-digit arithmetic (mpmath), frozen
    expected = np.array([
        0.0 + 0.57735026918962576451j,
        1.3660254037844386468 - 0.78867513459481288225j,
        0.36602540378443864676 + 0.21132486540518711775j,
    ])
    np.testing.assert_allclose(dft_forward([1, 1j, -1]), expected, atol=1e-15)
    np.testing.assert_allclose(dft_direct([1, 1j, -1]), expected, atol=1e-15)


def test_inverse_of_constant_case():
    np.testing.assert_allclose(dft_inverse([2, 0, 0, 0]), [1, 1, 1, 1], atol=1e-15)


def test_single_frequency_synthesis():
    xi = np.arange(3)
    np.testing.assert_allclose(dft_inverse([0, 1, 0]), np.exp(2j * np.pi * xi / 3) / np.sqrt(3), atol=1e-15)


def test_round_trip_d7(rng):
    x = cvec(rng, 7)
    np.testing.assert_allclose(dft_inverse(dft_forward(x)), x, atol=1e-14)


def test_inverse_matrix_is_conjugate_transpose():
    for d in (1, 5, 8):
        np.testing.assert_allclose(dft_matrix(d, inverse=True), dft_matrix(d).conj().T, atol=1e-15)


@pytest.mark.parametrize("bad", [[], np.zeros(0), [np.nan, 1.0], [1.0, np.inf]])
def test_rejects_empty_and_nonfinite(bad):
    with pytest.raises(InvalidDimensionError):
        dft_forward(bad)
    with pytest.raises(InvalidDimensionError):
        dft_inverse(bad)


def test_batched_rows_match_single(rng):
    x = cvec(rng, 5, 12)
    y = dft_forward(x)
    for i in range(5):
        np.testing.assert_allclose(y[i], dft_forward(x[i]), atol=1e-14)


lengths = st.integers(min_value=1, max_value=600)


@settings(max_examples=60, deadline=None)
@given(d=lengths, seed=st.integers(0, 2**32 - 1))
def test_fast_matches_direct(d, seed):
    x = cvec(np.random.default_rng(seed), d)
    err = np.linalg.norm(dft_forward(x) - dft_direct(x)) / np.linalg.norm(x)
    assert err <= 1e-9
    err = np.linalg.norm(dft_inverse(x) - dft_direct(x, inverse=True)) / np.linalg.norm(x)
    assert err <= 1e-9


@settings(max_examples=60, deadline=None)
@given(d=st.integers(1, 4096), seed=st.integers(0, 2**32 - 1))
def test_unitary_and_conjugation(d, seed):
    x = cvec(np.random.default_rng(seed), d)
    nx = np.linalg.norm(x)
    assert abs(np.linalg.norm(dft_forward(x)) - nx) <= 1e-10 * nx
    diff = dft_inverse(x) - np.conj(dft_forward(np.conj(x)))
    assert np.linalg.norm(diff) <= 1e-12 * nx


@pytest.mark.parametrize("d", [2**p for p in range(0, 13)])
def test_powers_of_two_match_numpy(d, rng):
    # third opinion from pocketfft with its normalization undone
    x = cvec(rng, d)
    np.testing.assert_allclose(dft_forward(x), np.fft.fft(x) / np.sqrt(d), atol=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3, 7, 8, 30, 64, 97])
def test_fourier_multiplier_matches_dense(d, rng):
    m = cvec(rng, d)
    x = cvec(rng, 3, d)
    F = dft_matrix(d)
    dense = F @ np.diag(m) @ F.conj().T
    np.testing.assert_allclose(FourierMultiplier(m)(x), x @ dense.T, atol=1e-12)


def test_fourier_multiplier_length_check():
    with pytest.raises(InvalidDimensionError):
        FourierMultiplier(np.ones(4))(np.ones(5))
