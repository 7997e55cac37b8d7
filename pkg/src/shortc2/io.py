"""JSON formats shared by the library and the CLI.

Map:  {"d": int, "a": [re, im], "q": [[re, im], ...]}  (q lists a_0 first)
Path: [[x_re, x_im, y_re, y_im], ...]  extended-precision samples carry decimal strings
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .arith import is_mp, mp_context, real_to_text
from .boettcher import SampledPath
from .core import ComplexPair, HenonMap
from .errors import HenonError

DEFAULT_MAP = {"d": 2, "a": [1.0, 0.0], "q": [[0.0, 0.0]]}


def _pair(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise HenonError("invalid-input", f"expected [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


def map_from_json(data: dict) -> HenonMap:
    try:
        d = int(data["d"])
        a = _pair(data.get("a", [1.0, 0.0]))
        q = [_pair(c) for c in data.get("q", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise HenonError("invalid-input", f"bad map document: {exc}") from exc
    if d < 2:
        raise HenonError("invalid-input", "degree must be at least 2")
    if len(q) > d - 1:
        raise HenonError("invalid-input", f"degree {d} takes at most {d - 1} coefficients")
    q = [c.real if c.imag == 0 else c for c in q]
    a_val = a.real if a.imag == 0 else a
    return HenonMap.make(d, q, a_val)


def map_to_json(hmap: HenonMap) -> dict:
    return {
        "d": hmap.d,
        "a": [hmap.a_num.real, hmap.a_num.imag],
        "q": [[c.real, c.imag] for c in hmap.p.numeric],
    }


def load_map(path: str | Path | None) -> HenonMap:
    if path is None:
        return map_from_json(DEFAULT_MAP)
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise HenonError("invalid-input", f"cannot read map file {path}: {exc}") from exc
    return map_from_json(data)


def _num(v):
    if is_mp(v):
        return real_to_text(v)
    return float(v)


def point_to_json(p: ComplexPair) -> list:
    x, y = p.x, p.y
    return [_num(x.real), _num(x.imag), _num(y.real), _num(y.imag)]


def point_from_json(row) -> ComplexPair:
    if not (isinstance(row, (list, tuple)) and len(row) == 4):
        raise HenonError("invalid-input", f"a point is [x_re, x_im, y_re, y_im], got {row!r}")
    if any(isinstance(v, str) for v in row):
        digits = max(len(str(v)) for v in row)
        ctx = mp_context(max(53, int(digits * 3.33) + 8))
        vals = [ctx.mpf(str(v)) for v in row]
        return ComplexPair(ctx.mpc(vals[0], vals[1]), ctx.mpc(vals[2], vals[3]))
    vals = [float(v) for v in row]
    if not all(math.isfinite(v) for v in vals):
        raise HenonError("invalid-input", "point coordinates must be finite")
    return ComplexPair(complex(vals[0], vals[1]), complex(vals[2], vals[3]))


def path_to_json(path: SampledPath) -> list:
    return [point_to_json(p) for p in path.points]


def path_from_json(rows, refinement_tol: float = 0.25) -> SampledPath:
    if not isinstance(rows, list) or len(rows) < 2:
        raise HenonError("invalid-input", "a path needs at least two samples")
    return SampledPath(tuple(point_from_json(r) for r in rows), refinement_tol)


def load_path(path: str | Path) -> SampledPath:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise HenonError("invalid-input", f"cannot read path file {path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("points")
    return path_from_json(data)


def dump_json(obj, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
