"""On-disk formats: CSV point sets, JSON sketch files and run manifests."""
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .circulant import CirculantSketch, build_sketch
from .errors import CircJLError

SKETCH_SCHEMA = "circjl.sketch/1"
MANIFEST_SCHEMA = "circjl.manifest/1"
REPORT_SCHEMA = "circjl.verify-report/1"

MODES = ("complex", "real")
_MODE_ALIASES = {"complex": "complex", "real": "real", "real2d": "real"}


class PointFileError(CircJLError, OSError):
    """A point file could not be read or is malformed."""


def fmt_float(v):
    return "%.17g" % v


def normalize_mode(mode):
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; expected one of {sorted(_MODE_ALIASES)}") from None


def write_points(path, points, mode):
    """Write ``points`` (n x d complex, or n x 2d real) with a ``# d= n= mode=`` header.

    Complex rows are interleaved ``re,im`` pairs; ``d`` in the header is
    always the complex dimension.
    """
    mode = normalize_mode(mode)
    pts = np.asarray(points)
    if mode == "complex":
        pts = np.asarray(pts, dtype=np.complex128)
        n, d = pts.shape
        flat = np.empty((n, 2 * d))
        flat[:, 0::2] = pts.real
        flat[:, 1::2] = pts.imag
    else:
        flat = np.asarray(pts, dtype=np.float64)
        n, two_d = flat.shape
        d = two_d // 2
    lines = [f"# d={d} n={n} mode={mode}"]
    lines.extend(",".join(fmt_float(v) for v in row) for row in flat)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_header(line):
    if not line.startswith("#"):
        raise PointFileError("missing '# d=... n=... mode=...' header")
    fields = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
    try:
        return int(fields["d"]), int(fields["n"]), normalize_mode(fields.get("mode", "complex"))
    except (KeyError, ValueError) as exc:
        raise PointFileError(f"bad header {line.strip()!r}: {exc}") from None


def read_points(path):
    """Return ``(points, mode)``: complex ``(n, d)`` or real ``(n, 2d)``."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise PointFileError(f"{path} is empty")
    d, n, mode = _parse_header(lines[0])
    body = lines[1:]
    if len(body) != n:
        raise PointFileError(f"header says n={n} but file has {len(body)} rows")
    try:
        flat = np.array([[float(v) for v in ln.split(",")] for ln in body], dtype=np.float64)
    except ValueError as exc:
        raise PointFileError(f"non-numeric entry in {path}: {exc}") from None
    flat = flat.reshape(n, -1) if n else np.zeros((0, 2 * d))
    if flat.shape[1] != 2 * d:
        raise PointFileError(f"rows must have {2 * d} numbers, got {flat.shape[1]}")
    if mode == "complex":
        return flat[:, 0::2] + 1j * flat[:, 1::2], mode
    return flat, mode


def sketch_to_dict(sketch: CirculantSketch, materialize=False, version=None):
    out = {
        "schema": SKETCH_SCHEMA,
        "tool_version": version,
        "seed": sketch.seed,
        "d": sketch.d,
        "k": sketch.k,
        "rows": None if sketch.rows is None else [int(r) for r in sketch.rows],
        "materialized": bool(materialize),
    }
    if materialize:
        out["a"] = [[float(z.real), float(z.imag)] for z in sketch.a]
        out["kappa"] = [int(s) for s in sketch.kappa]
    return out


def sketch_from_dict(obj):
    if obj.get("schema") != SKETCH_SCHEMA:
        raise ValueError(f"unsupported sketch schema {obj.get('schema')!r}")
    d, k, rows = int(obj["d"]), int(obj["k"]), obj.get("rows")
    if obj.get("materialized"):
        a = np.array([complex(re, im) for re, im in obj["a"]])
        return CirculantSketch.from_arrays(a, obj["kappa"], k=k, rows=rows, seed=obj.get("seed"))
    return build_sketch(d, k, int(obj["seed"]), rows=rows)


def dump_json(obj, path=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None:
        return text
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return text


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PointFileError(f"{path} is not valid JSON: {exc}") from exc


@dataclass
class RunManifest:
    command: str
    seed: int
    d: int | None = None
    k: list | int | None = None
    n: int | None = None
    epsilon: float | None = None
    trials: int | None = None
    mode: str | None = None
    rows: list | None = None
    suite: str | None = None
    tool_version: str | None = None
    backend: str | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {"schema": MANIFEST_SCHEMA, **asdict(self)}

    @classmethod
    def from_dict(cls, obj):
        if obj.get("schema") != MANIFEST_SCHEMA:
            raise ValueError(f"unsupported manifest schema {obj.get('schema')!r}")
        data = {k: v for k, v in obj.items() if k != "schema"}
        return cls(**data)
