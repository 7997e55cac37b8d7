"""Command-line front end. Every command prints one JSON report on stdout.

Exit codes: 0 ok, 2 invalid input, 3 a verification failed, 4 a required
decision could not be certified.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .affine import affine_preservers
from .biholo import biholo_criterion
from .boettcher import winding_class
from .core import ComplexPair
from .dyadic import DyadicClass
from .errors import HenonError
from .greens import DEFAULT_BUDGET, DEFAULT_TOL, Membership, classify_estimate, green_minus, green_plus
from .io import dump_json, load_map, load_path, map_to_json, path_to_json, point_to_json
from .modelspace import DeckTransform, ModelPoint, deck_apply, deck_error_bound, q_poly, verify_comm_cover
from .render import Grid, RenderConfig, Slice, config_from_json, write_all
from .reports import combine
from .schema import envelope, report_schema
from .topology import DEFAULT_EPS, certify_samples, connect_points
from .verify import SUITES, VerifyConfig, run_suite

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_UNDECIDED = 0, 2, 3, 4

UNDECIDED_CODES = {"endpoint-undecided", "path-too-wild", "path-uncertified", "orbit-overflow", "non-finite",
                   "seed-inconsistent"}


def exit_code_for(err: HenonError) -> int:
    return EXIT_UNDECIDED if err.code in UNDECIDED_CODES else EXIT_INVALID


class _Result:
    def __init__(self, body: dict, code: int = EXIT_OK):
        self.body, self.code = body, code


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise HenonError("invalid-input", f"not a complex number: {text!r}") from exc


def _point(xs: str, ys: str) -> ComplexPair:
    return ComplexPair(parse_complex(xs), parse_complex(ys))


def _level(text) -> float:
    try:
        c = float(text)
    except (TypeError, ValueError) as exc:
        raise HenonError("bad-level", f"bad level {text!r}") from exc
    if not c > 0:
        raise HenonError("bad-level", "level must be positive")
    return c


def cmd_green(args, hmap) -> _Result:
    z = _point(args.x, args.y)
    fn = green_minus if args.minus else green_plus
    est = fn(hmap, z, tol=args.tol or DEFAULT_TOL, budget=args.budget)
    return _Result({"point": point_to_json(z), "which": "minus" if args.minus else "plus", "estimate": est.to_json()})


def cmd_member(args, hmap) -> _Result:
    z = _point(args.x, args.y)
    c = _level(args.level)
    est = green_plus(hmap, z, tol=args.tol or DEFAULT_TOL, budget=args.budget)
    tag = classify_estimate(est, c)
    body = {"point": point_to_json(z), "level": c, "tag": tag.value, "estimate": est.to_json()}
    return _Result(body, EXIT_UNDECIDED if tag is Membership.UNRESOLVED else EXIT_OK)


def cmd_render(args, hmap) -> _Result:
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise HenonError("invalid-input", f"cannot read render config: {exc}") from exc
        cfg = config_from_json(data)
    else:
        cfg = RenderConfig(Grid(args.nx, args.ny, tuple(args.bounds)), level=_level(args.level), slice=Slice())
    cfg = RenderConfig(cfg.grid, cfg.level, cfg.slice, args.tol or cfg.tol,
                       args.budget if args.budget != DEFAULT_BUDGET else cfg.budget,
                       args.workers or cfg.workers)
    return _Result(write_all(hmap, cfg, args.out or ".", args.stem))


def cmd_loop_class(args, hmap) -> _Result:
    loop = load_path(args.path)
    if not loop.is_loop:
        raise HenonError("invalid-input", "the path file does not describe a closed loop")
    cls = winding_class(hmap, loop, c=_level(args.level) if args.level is not None else None, budget=args.budget)
    return _Result({"class": cls.to_json(), "d": cls.d, "value": float(cls), "text": str(cls)})


def cmd_connect(args, hmap) -> _Result:
    a, b = _point(*args.a), _point(*args.b)
    c = _level(args.level)
    path, info = connect_points(hmap, a, b, c, eps=args.eps, budget=args.budget, with_info=True)
    top = certify_samples(hmap, path, c, budget=args.budget)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    target = out / args.path_file
    dump_json({"map": map_to_json(hmap), "level": c, "points": path_to_json(path)}, target)
    return _Result({
        "path_file": str(target),
        "samples": len(path),
        "n0": info.n0,
        "eps": info.eps,
        "radius": info.radius,
        "margin_factor": info.margin_factor,
        "bits": info.bits,
        "max_green": top,
        "error_bound": 1e-10,
    })


def cmd_affine_group(args, hmap) -> _Result:
    return _Result(affine_preservers(hmap).to_json())


def _parse_class(text: str, d: int) -> DyadicClass:
    try:
        return DyadicClass.from_fraction(Fraction(text), d)
    except (ValueError, ZeroDivisionError) as exc:
        raise HenonError("invalid-input", f"bad class {text!r}: {exc}") from exc


def cmd_deck(args, hmap) -> _Result:
    if args.verify_comm:
        cfg = VerifyConfig(seed=args.seed, tol=args.tol or 1e-10)
        parts = [verify_comm_cover(hmap, n, args.m, cfg.samples, cfg.seed + n, tol=cfg.tol)
                 for n in range(1, cfg.max_n + 1)]
        body = combine("comm-cover", parts)
        return _Result(body, EXIT_OK if body["passed"] else EXIT_FAILED)
    if args.cls is None or args.zeta is None:
        raise HenonError("invalid-input", "deck needs --class and --zeta (or --verify-comm)")
    q = q_poly(hmap)
    cls = _parse_class(args.cls, hmap.d)
    g = DeckTransform(cls, args.m)
    pt = ModelPoint(parse_complex(args.z), parse_complex(args.zeta), _level(args.level))
    img = deck_apply(hmap, g, pt, q)
    return _Result({"class": cls.to_json(), "point": pt.to_json(), "image": img.to_json(),
                    "error_bound": deck_error_bound(hmap, g, pt, q)})


def cmd_bihol(args, hmap) -> _Result:
    try:
        d = int(args.d)
    except ValueError as exc:
        raise HenonError("invalid-input", f"bad degree {args.d!r}") from exc
    n = biholo_criterion(args.c1, args.c2, d)
    return _Result({"n": n, "c1": args.c1, "c2": args.c2, "d": d})


def cmd_verify(args, hmap) -> _Result:
    cfg = VerifyConfig(seed=args.seed, samples=args.samples, tol=args.tol or 1e-8)
    body = run_suite(args.suite, hmap, cfg)
    return _Result(body, EXIT_OK if body["passed"] else EXIT_FAILED)


def cmd_schema(args, hmap) -> _Result:
    return _Result(report_schema())


COMMANDS = {
    "green": cmd_green,
    "member": cmd_member,
    "render": cmd_render,
    "loop-class": cmd_loop_class,
    "connect": cmd_connect,
    "affine-group": cmd_affine_group,
    "deck": cmd_deck,
    "bihol": cmd_bihol,
    "verify": cmd_verify,
    "schema": cmd_schema,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", help="map JSON file (default: d=2, p=y^2, a=1)")
    common.add_argument("--out", help="output directory for artifacts and report.json")
    common.add_argument("--tol", type=float, help="target accuracy")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="iteration budget")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="shortc2", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"shortc2 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("green", parents=[common], help="certified G+ (or G-) at a point")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--minus", action="store_true")

    p = sub.add_parser("member", parents=[common], help="classify a point against {0 < G+ < c}")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--level", required=True)

    p = sub.add_parser("render", parents=[common], help="G+ on a real 2-plane section: CSV, PGM, sidecar")
    p.add_argument("--config", help="render config JSON (grid, level, slice)")
    p.add_argument("--nx", type=int, default=64)
    p.add_argument("--ny", type=int, default=64)
    p.add_argument("--bounds", type=float, nargs=4, default=[-3.0, 3.0, -3.0, 3.0], metavar=("U0", "U1", "V0", "V1"))
    p.add_argument("--level", default="2.0")
    p.add_argument("--workers", type=int)
    p.add_argument("--stem", default="render")

    p = sub.add_parser("loop-class", parents=[common], help="winding class k/d^n of a sampled loop")
    p.add_argument("path")
    p.add_argument("--level", help="also certify the loop lies in {0 < G+ < level}")

    p = sub.add_parser("connect", parents=[common], help="certified path between two points of {0 < G+ < c}")
    p.add_argument("--a", nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--b", nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--level", required=True)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--path-file", default="path.json")

    sub.add_parser("affine-group", parents=[common], help="diagonal affine maps preserving the sub-level sets")

    p = sub.add_parser("deck", parents=[common], help="apply a deck transformation of the model cover")
    p.add_argument("--class", dest="cls", help="k/d^n as a fraction, e.g. 1/4")
    p.add_argument("--z", default="0")
    p.add_argument("--zeta")
    p.add_argument("--level", default="1.0")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--verify-comm", action="store_true", help="run the lift/deck commutation suite")

    p = sub.add_parser("bihol", parents=[common], help="n with c1 = c2 d^n, or null")
    p.add_argument("c1")
    p.add_argument("c2")
    p.add_argument("d")

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    p.add_argument("--samples", type=int, default=1000)

    sub.add_parser("schema", parents=[common], help="print the report JSON schema")
    return parser


def _metadata(args) -> dict:
    return {"version": __version__, "seed": args.seed, "tol": args.tol, "budget": args.budget,
            "map_file": args.map}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        if args.budget < 1:
            raise HenonError("invalid-input", "budget must be at least 1")
        if args.tol is not None and not args.tol > 0:
            raise HenonError("invalid-input", "tol must be positive")
        hmap = load_map(args.map)
        result = COMMANDS[args.command](args, hmap)
    except ValueError as err:
        print(json.dumps({"error": "invalid-input", "message": str(err), "exit_code": EXIT_INVALID}), file=stderr)
        return EXIT_INVALID
    except HenonError as err:
        code = exit_code_for(err)
        print(json.dumps({"error": err.code, "message": str(err), "exit_code": code}), file=stderr)
        return code
    meta = _metadata(args)
    meta["map"] = map_to_json(hmap)
    doc = envelope(args.command, result.body, meta)
    text = dump_json(doc)
    if args.out and args.command != "schema":
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.command}.report.json").write_text(text + "\n")
    print(text, file=stdout)
    return result.code


def main() -> None:
    sys.exit(run())
