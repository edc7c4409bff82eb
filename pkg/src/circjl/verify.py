"""Named verification suites run by ``circjl verify``.

Each suite takes ``(seed, trials)`` and returns a list of check dicts with
``name``, ``passed`` and whatever numbers explain the verdict.
"""
import math

import numpy as np

from . import analysis
from .circulant import build_sketch, circ_apply_direct, circ_apply_fft, circulant_matrix, circulant_spectrum
from .dft import dft_direct, dft_forward, dft_inverse
from .linalg import gram_svd, jacobi_eigh
from .rng import STREAM_MC, Seed, generator


def _check(name, passed, **info):
    return {"name": name, "passed": bool(passed), **{k: _plain(v) for k, v in info.items()}}


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _cvec(rng, *shape):
    g = rng.standard_normal((*shape, 2))
    return g[..., 0] + 1j * g[..., 1]


def suite_dft(seed, trials):
    rng = generator(Seed(seed, STREAM_MC), 0x51)
    out = []
    for d in (1, 2, 3, 16, 17, 128, 257, 1024, 4096):
        x = _cvec(rng, 10, d)
        y = dft_forward(x)
        nx = np.linalg.norm(x, axis=1)
        norm_err = float(np.max(np.abs(np.linalg.norm(y, axis=1) - nx) / nx))
        rt_err = float(np.max(np.linalg.norm(dft_inverse(y) - x, axis=1) / nx))
        out.append(_check(f"unitary_roundtrip_d{d}", norm_err <= 1e-10 and rt_err <= 1e-10,
                          norm_err=norm_err, roundtrip_err=rt_err, tol=1e-10))
        if d <= 1024:
            fast_err = float(np.max(np.linalg.norm(y - dft_direct(x), axis=1) / nx))
            out.append(_check(f"fast_vs_direct_d{d}", fast_err <= 1e-9, err=fast_err, tol=1e-9))
        conj_err = float(np.max(np.linalg.norm(dft_inverse(x) - np.conj(dft_forward(np.conj(x))), axis=1) / nx))
        out.append(_check(f"conjugation_d{d}", conj_err <= 1e-12, err=conj_err, tol=1e-12))
    return out


def suite_circulant(seed, trials):
    rng = generator(Seed(seed, STREAM_MC), 0x52)
    out = []
    worst = 0.0
    for _ in range(40):
        d = int(rng.integers(1, 513))
        k = int(rng.integers(1, d + 1))
        rows = np.sort(rng.choice(d, size=k, replace=False))
        a, x = _cvec(rng, d), _cvec(rng, d)
        ref = circ_apply_direct(a, x, rows)
        err = np.linalg.norm(circ_apply_fft(a, x, rows) - ref) / max(np.linalg.norm(ref), 1e-300)
        worst = max(worst, float(err))
    out.append(_check("fft_vs_direct", worst <= 1e-9, err=worst, tol=1e-9))
    d = 64
    a = _cvec(rng, d)
    xi = 5
    col = dft_forward(np.eye(d)[xi])
    lam = math.sqrt(d) * dft_forward(a)[xi]
    eig_err = float(np.linalg.norm(circ_apply_fft(a, col) - lam * col))
    out.append(_check("eigen_relation", eig_err <= 1e-9, err=eig_err, tol=1e-9))
    sv = circulant_spectrum(a)
    frob = float(abs(np.sum(sv**2) - d * np.sum(np.abs(a) ** 2)) / (d * np.sum(np.abs(a) ** 2)))
    out.append(_check("frobenius_identity", frob <= 1e-10, err=frob, tol=1e-10))
    M = circulant_matrix(a[:16])
    w, _ = jacobi_eigh(M @ M.conj().T)
    gram = np.sort(np.sqrt(np.clip(w, 0, None)))
    sv16 = np.sort(circulant_spectrum(a[:16]))
    sv_err = float(np.max(np.abs(gram - sv16)) / sv16.max())
    out.append(_check("singular_values_vs_gram", sv_err <= 1e-8, err=sv_err, tol=1e-8))
    return out


def suite_spectrum(seed, trials):
    rng = generator(Seed(seed, STREAM_MC), 0x53)
    l1_err = dom = holder = piv = 0.0
    for i in range(25):
        d = int(rng.integers(8, 129))
        k = int(rng.integers(1, min(d, 32) + 1))
        sk = build_sketch(d, k, seed * 1000 + i)
        x = _cvec(rng, d)
        p = analysis.pivotal_identity(sk, x)
        mu = p.mu
        sup = analysis.precondition_supnorm(sk.kappa, x / np.linalg.norm(x))
        l1_err = max(l1_err, abs(mu.l1 - k) / k)
        dom = max(dom, mu.linf - d * sup**2 * (1 + 1e-12))
        holder = max(holder, mu.l2 - math.sqrt(mu.l1 * mu.linf) * (1 + 1e-12))
        piv = max(piv, abs(p.sketched - p.spectral) / p.sketched, abs(p.sketched - p.proof) / p.sketched)
    return [
        _check("mu_l1_equals_k", l1_err <= 1e-9, err=l1_err, tol=1e-9),
        _check("mu_linf_dominated", dom <= 0, excess=dom),
        _check("mu_l2_holder", holder <= 0, excess=holder),
        _check("pivotal_identity", piv <= 1e-8, err=piv, tol=1e-8),
    ]


def suite_tails(seed, trials):
    out = []
    for s in (0.3, 0.5, 0.8):
        r = analysis.precondition_tail_check(64, s, trials, seed)
        out.append(_check(f"precondition_tail_s{s}", r.passed, freq=r.empirical_freq,
                          bound=r.analytic_bound, slack=r.slack))
    mu = np.ones(8)
    for t in (0.5, 1.0, 2.0):
        up, lo = analysis.concentration_tail_check(mu, t, trials, seed)
        out.append(_check(f"chi2_upper_t{t}", up.passed, freq=up.empirical_freq,
                          bound=up.analytic_bound, slack=up.slack))
        out.append(_check(f"chi2_lower_t{t}", lo.passed, freq=lo.empirical_freq,
                          bound=lo.analytic_bound, slack=lo.slack))
    return out


def suite_rotation(seed, trials):
    sk = build_sketch(64, 8, seed)
    x = _cvec(generator(Seed(seed, STREAM_MC), 0x55), 64)
    _, _, Vh = gram_svd(analysis.proof_matrix(sk, x))
    disc = analysis.gaussian_rotation_check(Vh, trials, seed)
    # 0.05 at 1e5 draws, widened like a standard error for fewer draws
    tol = 0.05 * max(1.0, math.sqrt(1e5 / trials))
    return [_check("rotation_invariance", disc <= tol, discrepancy=disc, tol=tol)]


SUITES = {
    "dft": suite_dft,
    "circulant": suite_circulant,
    "spectrum": suite_spectrum,
    "tails": suite_tails,
    "rotation": suite_rotation,
}


def run_suites(names, seed, trials):
    results = {}
    for name in names:
        checks = SUITES[name](seed, trials)
        results[name] = {"passed": all(c["passed"] for c in checks), "checks": checks}
    return results
