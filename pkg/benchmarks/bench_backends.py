"""Compare the numba kernels with their numpy fallbacks, and FFT apply with direct apply.

    python benchmarks/bench_backends.py [--repeat 5] [--quick]

Timings are the minimum over repeats. Numba compilation is excluded by a warm-up call.
"""
import argparse
import timeit

import numpy as np

from circjl import _kernels_numba as nb
from circjl import _kernels_numpy as npk
from circjl.circulant import build_sketch, circ_apply_direct, circ_apply_fft
from circjl.dft import _pow2_plan


def best(fn, repeat, number=1):
    fn()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def bench_fft(n, rows, repeat):
    rng = np.random.default_rng(0)
    x = rng.standard_normal((rows, n)) + 1j * rng.standard_normal((rows, n))
    tw = _pow2_plan(n).tw_fwd
    out = {}
    for name, mod in (("numba", nb), ("numpy", npk)):
        out[name] = best(lambda: mod.fft_dif_rows(x.copy(), tw, -1.0), repeat)
    return out


def bench_direct(d, k, repeat):
    rng = np.random.default_rng(1)
    a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    rows = np.arange(k, dtype=np.int64)
    return {name: best(lambda: mod.circ_direct(a, x, rows), repeat) for name, mod in (("numba", nb), ("numpy", npk))}


def bench_jacobi(n, repeat):
    rng = np.random.default_rng(2)
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = B @ B.conj().T
    return {name: best(lambda: mod.jacobi_hermitian(A.copy(), 1e-14, 60), repeat)
            for name, mod in (("numba", nb), ("numpy", npk))}


def bench_apply(d, k, repeat):
    s = build_sketch(d, k, 0)
    rng = np.random.default_rng(3)
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    rows = s.row_indices
    return {
        "fft": best(lambda: circ_apply_fft(s, x), repeat, number=5),
        "direct": best(lambda: circ_apply_direct(s.a, x, rows), repeat),
    }


def row(label, times):
    a, b = times.values()
    names = list(times)
    print(f"{label:<28} {names[0]:>6} {a * 1e3:9.3f} ms   {names[1]:>6} {b * 1e3:9.3f} ms   ratio {b / a:7.1f}x")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--quick", action="store_true", help="smaller sizes")
    args = p.parse_args(argv)
    big = 1 << (12 if args.quick else 16)
    r = args.repeat

    print("kernel backends (numba vs numpy)")
    row(f"fft_dif n={big}", bench_fft(big, 1, r))
    row("fft_dif n=1024 rows=64", bench_fft(1024, 64, r))
    row(f"circ_direct d={big} k=64", bench_direct(big, 64, r))
    row("jacobi_hermitian n=32", bench_jacobi(32, r))
    print("\ncirculant apply, active backend (fft vs direct)")
    row(f"apply d={big} k=256", bench_apply(big, 256, r))


if __name__ == "__main__":
    main()
