"""``circjl`` command line.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 I/O failure.
"""
import argparse
import sys
import warnings

import numpy as np

from . import __version__, _backend
from .analysis import jl_experiment
from .circulant import build_sketch
from .embed import EmbedConfig, embed_batch, embed_real_batch, implied_multiplier
from .errors import CircJLError, InvalidConfigurationError, InvalidDimensionError
from .io import (
    REPORT_SCHEMA,
    PointFileError,
    RunManifest,
    dump_json,
    fmt_float,
    load_json,
    normalize_mode,
    read_points,
    sketch_from_dict,
    sketch_to_dict,
    write_points,
)
from .rng import seed_from_env
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3


class _ArgError(Exception):
    pass


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    return seed_from_env(0)


def _manifest(command, args, seed, **kw):
    return RunManifest(command=command, seed=seed, tool_version=__version__,
                       backend=_backend.BACKEND, **kw)


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def cmd_sketch(args):
    seed = _resolve_seed(args)
    sketch = build_sketch(args.d, args.k, seed, rows=args.rows)
    obj = sketch_to_dict(sketch, materialize=args.materialize, version=__version__)
    _emit(dump_json(obj), args.out)
    return EXIT_OK


def cmd_embed(args):
    sketch = sketch_from_dict(load_json(args.sketch))
    points, file_mode = read_points(args.input)
    mode = normalize_mode(args.mode) if args.mode else file_mode
    if mode != file_mode:
        raise _ArgError(f"--mode {mode} does not match input file mode {file_mode}")
    n = points.shape[0]
    width = points.shape[1] // 2 if mode == "real" else points.shape[1]
    if width != sketch.d:
        raise InvalidDimensionError(f"input has d={width}, sketch has d={sketch.d}")
    if mode == "complex":
        out = embed_batch(sketch, points) if n else np.zeros((0, sketch.k), complex)
    else:
        out = embed_real_batch(sketch, points) if n else np.zeros((0, 2 * sketch.k))
    write_points(args.out, out, mode)
    if args.manifest:
        m = _manifest("embed", args, sketch.seed, d=sketch.d, k=sketch.k, n=n, mode=mode,
                      rows=None if sketch.rows is None else sketch.rows.tolist(),
                      extra={"sketch": args.sketch, "input": args.input})
        dump_json(m.to_dict(), args.manifest)
    return EXIT_OK


def _run_verify(suite, seed, trials):
    names = list(SUITES) if suite == "all" else [suite]
    results = run_suites(names, seed, trials)
    ok = all(r["passed"] for r in results.values())
    manifest = _manifest("verify", None, seed, trials=trials, suite=suite)
    return ok, {"schema": REPORT_SCHEMA, "manifest": manifest.to_dict(), "passed": ok, "suites": results}


def cmd_verify(args):
    seed = _resolve_seed(args)
    if args.trials < 1:
        raise _ArgError("--trials must be >= 1")
    ok, report = _run_verify(args.suite, seed, args.trials)
    if args.format == "text":
        lines = []
        for name, res in report["suites"].items():
            for c in res["checks"]:
                lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {name}.{c['name']}")
        lines.append("ALL PASS" if ok else "FAILURES")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dump_json(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _experiment_csv(d, n, eps, ks, trials, seed):
    header = f"# circjl experiment d={d} n={n} eps={eps!r} trials={trials} seed={seed} version={__version__}"
    lines = [header, "k,success_rate,mean_worst_distortion,k_multiplier"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for k in ks:
            cfg = EmbedConfig(eps, n, d, k)
            res = jl_experiment(cfg, trials, seed)
            lines.append(",".join([str(k), fmt_float(res.success_rate),
                                   fmt_float(res.mean_worst_distortion),
                                   fmt_float(implied_multiplier(k, eps, n))]))
    return "\n".join(lines) + "\n"


def cmd_experiment(args):
    seed = _resolve_seed(args)
    ks = args.k
    if not ks:
        raise _ArgError("--k needs at least one value")
    if args.trials < 1 or args.n < 1:
        raise _ArgError("--trials and --n must be >= 1")
    for k in ks:
        if not 1 <= k <= args.d:
            raise InvalidConfigurationError(f"k={k} outside [1, d={args.d}]")
    if not 0 < args.eps < 0.5:
        raise InvalidConfigurationError("--eps must lie in (0, 1/2)")
    text = _experiment_csv(args.d, args.n, args.eps, ks, args.trials, seed)
    _emit(text, args.out)
    if args.out and args.out != "-":
        m = _manifest("experiment", args, seed, d=args.d, k=ks, n=args.n, epsilon=args.eps,
                      trials=args.trials, mode="complex")
        dump_json(m.to_dict(), args.out + ".manifest.json")
    return EXIT_OK


def cmd_replay(args):
    m = RunManifest.from_dict(load_json(args.manifest))
    if m.command == "experiment":
        _emit(_experiment_csv(m.d, m.n, m.epsilon, list(m.k), m.trials, m.seed), args.out)
        return EXIT_OK
    if m.command == "verify":
        ok, report = _run_verify(m.suite, m.seed, m.trials)
        _emit(dump_json(report), args.out)
        return EXIT_OK if ok else EXIT_FAIL
    if m.command == "embed":
        ns = argparse.Namespace(sketch=m.extra["sketch"], input=m.extra["input"], out=args.out,
                                mode=m.mode, manifest=None)
        return cmd_embed(ns)
    raise _ArgError(f"cannot replay command {m.command!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="circjl", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"circjl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sketch", help="create a sketch file")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--rows", type=_int_list, default=None, help="comma-separated row indices")
    s.add_argument("--materialize", action="store_true", help="store a and kappa explicitly")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sketch)

    e = sub.add_parser("embed", help="embed a CSV point file")
    e.add_argument("--sketch", required=True)
    e.add_argument("--input", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--mode", choices=("complex", "real", "real2d"), default=None)
    e.add_argument("--manifest", default=None, help="also write a run manifest here")
    e.set_defaults(func=cmd_embed)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("experiment", help="success rate of the embedding over a k grid")
    x.add_argument("--d", type=int, required=True)
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--eps", type=float, required=True)
    x.add_argument("--k", type=_int_list, required=True, help="comma-separated target dimensions")
    x.add_argument("--trials", type=int, default=300)
    x.add_argument("--seed", type=int, default=None)
    x.add_argument("--out", default=None)
    x.set_defaults(func=cmd_experiment)

    r = sub.add_parser("replay", help="re-run a recorded manifest")
    r.add_argument("manifest")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PointFileError, OSError) as exc:
        print(f"circjl: {exc}", file=sys.stderr)
        return EXIT_IO
    except (_ArgError, CircJLError, ValueError, KeyError) as exc:
        print(f"circjl: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
