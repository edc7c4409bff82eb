import math
import warnings

import numpy as np
import pytest

from circjl.circulant import build_sketch, circulant_matrix
from circjl.embed import (
    EmbedConfig,
    embed_batch,
    embed_complex,
    embed_real,
    embed_real_batch,
    implied_multiplier,
    pack_real,
    target_dim,
)
from circjl.errors import InvalidConfigurationError, InvalidDimensionError

from conftest import cvec


@pytest.fixture
def sketch():
    return build_sketch(64, 8, seed=21)


def test_zero_maps_to_zero(sketch):
    np.testing.assert_array_equal(embed_complex(sketch, np.zeros(64)), np.zeros(8))
    np.testing.assert_array_equal(embed_real(sketch, np.zeros(128)), np.zeros(16))


def test_homogeneity_and_additivity(sketch, rng):
    x, y = cvec(rng, 64), cvec(rng, 64)
    c = complex(rng.standard_normal(), rng.standard_normal())
    fx = embed_complex(sketch, x)
    assert np.linalg.norm(embed_complex(sketch, c * x) - c * fx) <= 1e-12 * np.linalg.norm(c * fx)
    fxy = embed_complex(sketch, x + y)
    assert np.linalg.norm(fxy - fx - embed_complex(sketch, y)) <= 1e-10 * np.linalg.norm(fxy)


def test_delta_input_expansion():
    s = build_sketch(16, 4, seed=5)
    out = embed_complex(s, np.eye(16)[0])
    # only u = 0 survives: f(delta_0)_j = a[(0 - j) % 16] * kappa_0 / sqrt(2k)
    expected = np.array([s.a[(-j) % 16] for j in range(4)]) * s.kappa[0] / math.sqrt(8)
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_direct_and_fft_methods_agree(sketch, rng):
    x = cvec(rng, 64)
    np.testing.assert_allclose(embed_complex(sketch, x, "direct"), embed_complex(sketch, x), atol=1e-12)


def test_matches_dense_definition(sketch, rng):
    x = cvec(rng, 64)
    dense = circulant_matrix(sketch.a, sketch.row_indices) @ np.diag(sketch.kappa) / math.sqrt(16)
    np.testing.assert_allclose(embed_complex(sketch, x), dense @ x, atol=1e-12)


def test_real_norm_equals_complex_norm(sketch, rng):
    for _ in range(20):
        x = rng.standard_normal(128)
        r = np.linalg.norm(embed_real(sketch, x))
        c = np.linalg.norm(embed_complex(sketch, pack_real(x)))
        assert abs(r - c) <= 1e-12 * c


def test_real_block_matrix_d4():
    s = build_sketch(4, 2, seed=8)
    M_re = circulant_matrix(s.a.real, s.row_indices).real
    M_im = circulant_matrix(s.a.imag, s.row_indices).real
    D = np.diag(s.kappa.astype(float))
    block = np.block([[M_re, -M_im], [M_im, M_re]]) @ np.block([[D, np.zeros((4, 4))], [np.zeros((4, 4)), D]])
    block /= math.sqrt(2 * s.k)
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.standard_normal(8)
        np.testing.assert_allclose(embed_real(s, x), block @ x, atol=1e-14)


def test_real_rejects_odd_length(sketch):
    with pytest.raises(InvalidDimensionError):
        embed_real(sketch, np.ones(127))
    with pytest.raises(InvalidDimensionError):
        pack_real(np.ones(3))


class TestBatch:
    def test_empty(self, sketch):
        assert embed_batch(sketch, []).shape == (0, 8)

    def test_singleton(self, sketch, rng):
        x = cvec(rng, 64)
        np.testing.assert_allclose(embed_batch(sketch, [x])[0], embed_complex(sketch, x), atol=1e-14)

    def test_permutation(self, sketch, rng):
        pts = cvec(rng, 9, 64)
        perm = rng.permutation(9)
        np.testing.assert_allclose(embed_batch(sketch, pts[perm]), embed_batch(sketch, pts)[perm], atol=1e-14)

    def test_list_and_array_agree(self, sketch, rng):
        pts = cvec(rng, 4, 64)
        np.testing.assert_array_equal(embed_batch(sketch, list(pts)), embed_batch(sketch, pts))

    def test_error_names_index(self, sketch, rng):
        pts = [cvec(rng, 64), cvec(rng, 64), cvec(rng, 63)]
        with pytest.raises(InvalidDimensionError, match="point 2"):
            embed_batch(sketch, pts)

    def test_real_batch(self, sketch, rng):
        pts = rng.standard_normal((3, 128))
        out = embed_real_batch(sketch, pts)
        for i in range(3):
            np.testing.assert_allclose(out[i], embed_real(sketch, pts[i]), atol=1e-14)


def test_unbiased_small():
    # quick version of the 1e5-sketch acceptance run
    x = np.ones(32) / math.sqrt(32)
    vals = [np.sum(np.abs(embed_complex(build_sketch(32, 4, seed=s), x)) ** 2) for s in range(4000)]
    se = np.std(vals) / math.sqrt(len(vals))
    assert abs(np.mean(vals) - 1) <= 4 * se


class TestConfig:
    def test_valid(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            EmbedConfig(0.25, 100, 64, 16)

    @pytest.mark.parametrize("eps,n,d,k", [(0.0, 10, 8, 2), (0.5, 10, 8, 2), (0.3, 0, 8, 2), (0.3, 10, 8, 9), (0.3, 10, 8, 0)])
    def test_invalid(self, eps, n, d, k):
        with pytest.raises(InvalidConfigurationError):
            EmbedConfig(eps, n, d, k)

    def test_warns_when_n_below_d(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            EmbedConfig(0.3, 4, 64, 8)
        assert any("n=4 < d=64" in str(w.message) for w in caught)


def test_target_dim_round_trip():
    k = target_dim(0.3, 16, 1.49, d=256)
    assert k == 128
    assert abs(implied_multiplier(128, 0.3, 16) - 1.4985) < 1e-3
    assert target_dim(0.1, 10**6, 5.0, d=100) == 100
