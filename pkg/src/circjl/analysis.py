"""Numerical checks of the ingredients behind the embedding guarantee.

Deterministic identities (norms of the proof-matrix spectrum, the
sup-norm domination, the Gram/SVD identity) are computed exactly on one
instance. Probabilistic statements (sub-Gaussian tail of the
preconditioned spectrum, weighted chi-square tails, rotation invariance,
end-to-end distortion) are Monte-Carlo estimates compared one-sidedly
against their analytic bounds, with two binomial standard errors of
slack.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .circulant import CirculantSketch, Mu, build_sketch, circ_apply_direct, diag_apply
from .dft import as_complex_vec, dft_forward, dft_inverse
from .embed import EmbedConfig, embed_batch
from .errors import InvalidConfigurationError, InvalidDimensionError, PreconditionError
from .linalg import gram_svd, jacobi_eigh
from .rng import STREAM_MC, STREAM_POINTS, Seed, derive_seed, generator

__all__ = [
    "TailCheckResult",
    "DistortionReport",
    "PivotalCheck",
    "TrialRecord",
    "ExperimentResult",
    "precondition_supnorm",
    "precondition_tail_check",
    "proof_matrix",
    "spectrum_stats",
    "pivotal_identity",
    "gaussian_rotation_check",
    "concentration_tail_check",
    "weighted_chi_square",
    "norm_mean_check",
    "batched_sq_norms",
    "distortion_report",
    "jl_experiment",
]

_CHUNK = 20_000


def _mc_generator(seed, *path):
    value = seed.value if isinstance(seed, Seed) else int(seed)
    return generator(Seed(value, STREAM_MC), *path)


def _chunks(trials):
    done = 0
    while done < trials:
        m = min(_CHUNK, trials - done)
        yield m
        done += m


def _binomial_slack(p, trials):
    p = min(max(p, 0.0), 1.0)
    return 2.0 * math.sqrt(p * (1.0 - p) / trials)


@dataclass(frozen=True)
class TailCheckResult:
    parameter: float
    trials: int
    exceedances: int
    empirical_freq: float
    analytic_bound: float
    slack: float
    passed: bool

    @classmethod
    def from_counts(cls, parameter, trials, exceedances, bound):
        freq = exceedances / trials
        # standard error under the bound taken as the true probability
        slack = _binomial_slack(bound, trials)
        return cls(float(parameter), int(trials), int(exceedances), freq, float(bound), slack,
                   bool(freq <= bound + slack))


def _unit(x):
    x = as_complex_vec(x)
    if x.ndim != 1:
        raise InvalidDimensionError("expected a single vector")
    nrm = np.linalg.norm(x)
    if nrm == 0:
        raise PreconditionError("zero vector has no direction")
    return x / nrm


def precondition_supnorm(kappa, x):
    """``max_xi |(F_d D_kappa x)(xi)|``."""
    return float(np.abs(dft_forward(diag_apply(kappa, x))).max())


def precondition_tail_check(d, s, trials, seed, x=None, frequency=0):
    """Empirical ``P(|(F_d D_kappa x)(l)| > s)`` over fresh signs vs ``4 exp(-s^2 d / 4)``.

    ``x`` defaults to the flat unit vector, the worst case without signs.
    """
    if s <= 0 or trials < 1:
        raise InvalidConfigurationError("need s > 0 and trials >= 1")
    x = np.full(d, 1 / math.sqrt(d), dtype=np.complex128) if x is None else _unit(x)
    if x.shape[0] != d:
        raise InvalidDimensionError("x length must equal d")
    u = np.arange(d)
    # one row of F_d folded into x: y_l = sum_u kappa_u * x_u * exp(-2 pi i l u / d) / sqrt(d)
    row = x * np.exp(-2j * np.pi * ((frequency * u) % d) / d) / math.sqrt(d)
    rng = _mc_generator(seed, 0xA1, d)
    hits = 0
    for m in _chunks(trials):
        signs = 2.0 * rng.integers(0, 2, size=(m, d), dtype=np.int8) - 1.0
        hits += int(np.count_nonzero(np.abs(signs @ row) > s))
    bound = 4.0 * math.exp(-s * s * d / 4.0)
    return TailCheckResult.from_counts(s, trials, hits, bound)


def proof_matrix(sketch: CirculantSketch, x):
    """Rows ``S^r (D_kappa x~)`` for each sketch row ``r``, with ``S`` the left cyclic shift.

    With this layout ``M_{a,k} D_kappa x~ = Y a`` entrywise.
    """
    z = diag_apply(sketch.kappa, _unit(x))
    d = sketch.d
    idx = (np.arange(d)[None, :] + sketch.row_indices[:, None]) % d
    return z[idx]


def spectrum_stats(Y):
    """Eigenvalues of ``Y Y*`` (squared singular values of ``Y``) via Jacobi."""
    Y = np.asarray(Y, dtype=np.complex128)
    if Y.ndim != 2 or Y.shape[0] > Y.shape[1]:
        raise InvalidDimensionError(f"expected a wide k x d matrix, got {Y.shape}")
    w, _ = jacobi_eigh(Y @ Y.conj().T)
    return Mu.from_values(np.clip(w, 0.0, None))


@dataclass(frozen=True)
class PivotalCheck:
    sketched: float   # ||M_{a,k} D_kappa x~||^2, through the circulant
    proof: float      # ||Y a||^2
    spectral: float   # sum_j mu_j |b_j|^2, b = V* a
    mu: Mu
    b: np.ndarray


def pivotal_identity(sketch: CirculantSketch, x):
    xu = _unit(x)
    sketched = circ_apply_direct(sketch.a, diag_apply(sketch.kappa, xu), sketch.row_indices)
    Y = proof_matrix(sketch, xu)
    _, s, Vh = gram_svd(Y)
    b = Vh @ sketch.a
    mu = Mu.from_values(s**2)
    spectral = float(np.sum(s[: b.shape[0]] ** 2 * np.abs(b) ** 2))
    return PivotalCheck(
        sketched=float(np.sum(np.abs(sketched) ** 2)),
        proof=float(np.sum(np.abs(Y @ sketch.a) ** 2)),
        spectral=spectral,
        mu=mu,
        b=b,
    )


def gaussian_rotation_check(W, trials, seed):
    """Max deviation of the covariance of ``W a`` from ``2 I`` (and pseudo-covariance from 0).

    ``a`` is a fresh standard complex Gaussian vector per trial.
    """
    W = np.asarray(W, dtype=np.complex128)
    if W.ndim != 2 or W.shape[0] > W.shape[1]:
        raise PreconditionError(f"W must be k x d with k <= d, got {W.shape}")
    k, d = W.shape
    if np.abs(W @ W.conj().T - np.eye(k)).max() > 1e-10:
        raise PreconditionError("rows of W are not orthonormal")
    rng = _mc_generator(seed, 0xB2, k, d)
    cov = np.zeros((k, k), dtype=np.complex128)
    pcov = np.zeros((k, k), dtype=np.complex128)
    for m in _chunks(trials):
        g = rng.standard_normal((m, d, 2))
        b = (g[..., 0] + 1j * g[..., 1]) @ W.T
        cov += b.T @ b.conj()
        pcov += b.T @ b
    cov /= trials
    pcov /= trials
    return float(max(np.abs(cov - 2 * np.eye(k)).max(), np.abs(pcov).max()))


def weighted_chi_square(mu, trials, seed):
    """Samples of ``Z = sum_j mu_j (|b_j|^2 - 2)`` for standard complex Gaussian ``b``."""
    mu = mu.mu if isinstance(mu, Mu) else np.asarray(mu, dtype=np.float64)
    rng = _mc_generator(seed, 0xC3, mu.shape[0])
    out = np.empty(trials)
    pos = 0
    for m in _chunks(trials):
        g = rng.standard_normal((m, mu.shape[0], 2))
        out[pos:pos + m] = (np.sum(g * g, axis=2) - 2.0) @ mu
        pos += m
    return out


def concentration_tail_check(mu, t, trials, seed):
    """Upper and lower tails of ``Z`` against ``exp(-t)``.

    Upper event: ``Z > 2 sqrt(2) ||mu||_2 sqrt(t) + 2 ||mu||_inf t``.
    Lower event: ``Z < -2 sqrt(2) ||mu||_2 sqrt(t)``.
    """
    if t <= 0:
        raise InvalidConfigurationError("t must be positive")
    if not isinstance(mu, Mu):
        mu = Mu.from_values(mu)
    z = weighted_chi_square(mu, trials, seed)
    upper_thr = 2 * math.sqrt(2) * mu.l2 * math.sqrt(t) + 2 * mu.linf * t
    lower_thr = -2 * math.sqrt(2) * mu.l2 * math.sqrt(t)
    bound = math.exp(-t)
    upper = TailCheckResult.from_counts(t, trials, int(np.count_nonzero(z > upper_thr)), bound)
    lower = TailCheckResult.from_counts(t, trials, int(np.count_nonzero(z < lower_thr)), bound)
    return upper, lower


def batched_sq_norms(a, kappa, x, k):
    """``||f(x)||^2`` for many sketches at once: row ``i`` of ``a``/``kappa`` is one sketch."""
    d = a.shape[1]
    lam = math.sqrt(d) * dft_forward(a)
    y = dft_forward(lam * dft_inverse(kappa * x))[:, :k]
    return np.sum(np.abs(y) ** 2, axis=1) / (2 * k)


def norm_mean_check(d, k, trials, seed, x=None):
    """Mean and standard error of ``||f(x)||^2`` over ``trials`` fresh sketches.

    Sketches are drawn in blocks and applied with batched transforms; the
    result for trial ``i`` equals ``embed_complex`` on the sketch with the
    same ``a`` and ``kappa``.
    """
    if x is None:
        x = np.ones(d, dtype=np.complex128)
    xu = _unit(x)
    rng = _mc_generator(seed, 0xD4, d, k)
    vals = np.empty(trials)
    pos = 0
    for m in _chunks(trials):
        g = rng.standard_normal((m, d, 2))
        a = g[..., 0] + 1j * g[..., 1]
        kappa = 2.0 * rng.integers(0, 2, size=(m, d), dtype=np.int8) - 1.0
        vals[pos:pos + m] = batched_sq_norms(a, kappa, xu, k)
        pos += m
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(trials))


@dataclass(frozen=True)
class DistortionReport:
    """Per-point ``||f(x)||^2 / ||x||^2``; zero-norm points carry NaN and are listed in ``skipped``."""

    ratios: np.ndarray
    eps: float
    worst_low: float
    worst_high: float
    passed: bool
    skipped: tuple = ()

    @property
    def max_distortion(self):
        if math.isnan(self.worst_low):
            return 0.0
        return max(1.0 - self.worst_low, self.worst_high - 1.0)


def _ratios_to_report(sq_in, sq_out, eps):
    skipped = tuple(int(i) for i in np.flatnonzero(sq_in == 0))
    ratios = np.full(sq_in.shape, np.nan)
    ok = sq_in > 0
    ratios[ok] = sq_out[ok] / sq_in[ok]
    if ok.any():
        lo, hi = float(np.min(ratios[ok])), float(np.max(ratios[ok]))
        passed = 1.0 - eps <= lo and hi <= 1.0 + eps
    else:
        lo = hi = float("nan")
        passed = True
    return DistortionReport(ratios, float(eps), lo, hi, bool(passed), skipped)


def distortion_report(sketch: CirculantSketch, points, eps):
    if not 0 < eps < 0.5:
        raise InvalidConfigurationError(f"eps must lie in (0, 1/2), got {eps}")
    if isinstance(points, np.ndarray):
        pts = points
    else:
        pts = list(points)
    if len(pts) == 0:
        raise InvalidConfigurationError("point set is empty")
    pts = as_complex_vec(np.asarray(pts), "points").reshape(len(pts), -1)
    emb = embed_batch(sketch, pts)
    sq_in = np.sum(np.abs(pts) ** 2, axis=1)
    sq_out = np.sum(np.abs(emb) ** 2, axis=1)
    return _ratios_to_report(sq_in, sq_out, eps)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    worst_low: float
    worst_high: float
    passed: bool

    @property
    def max_distortion(self):
        return max(1.0 - self.worst_low, self.worst_high - 1.0)


@dataclass(frozen=True)
class ExperimentResult:
    config: EmbedConfig
    seed: int
    success_rate: float
    records: list = field(default_factory=list)

    @property
    def mean_worst_distortion(self):
        return float(np.mean([r.max_distortion for r in self.records]))


def jl_experiment(config: EmbedConfig, trials, seed, rows=None):
    """Fresh sketch and fresh complex Gaussian point cloud per trial; fraction of trials that pass.

    Trial ``i`` uses the u64 seed ``derive_seed(seed, i)`` for both, so any
    single trial can be replayed on its own.
    """
    if trials < 1:
        raise InvalidConfigurationError("trials must be >= 1")
    value = seed.value if isinstance(seed, Seed) else int(seed)
    records = []
    for i in range(trials):
        s = derive_seed(value, i)
        sketch = build_sketch(config.d, config.k, s, rows=rows)
        g = generator(Seed(s, STREAM_POINTS)).standard_normal((config.n, config.d, 2))
        pts = g[..., 0] + 1j * g[..., 1]
        rep = distortion_report(sketch, pts, config.epsilon)
        records.append(TrialRecord(i, s, rep.worst_low, rep.worst_high, rep.passed))
    rate = sum(r.passed for r in records) / trials
    return ExperimentResult(config, value, rate, records)
