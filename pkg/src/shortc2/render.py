"""Green's function on a real 2-plane section of C^2, with CSV / PGM output.

A cell (row j, col i) sits at origin + u_i * u_dir + v_j * v_dir, u and v on closed
uniform grids (a single cell sits at the middle of its range). Rows are v, columns u,
stored row-major. Work is split by rows; results are merged by row index, so the
output does not depend on the number of workers.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .core import ComplexPair, HenonMap
from .errors import HenonError
from .greens import DEFAULT_BUDGET, DEFAULT_TOL, GreenEstimate, classify_estimate, green_plus, radius_for_accuracy
from .io import map_to_json


@dataclass(frozen=True)
class Slice:
    origin: tuple = (0j, 0j)
    u_dir: tuple = (0j, 1 + 0j)
    v_dir: tuple = (0j, 1j)

    def point(self, u: float, v: float) -> ComplexPair:
        return ComplexPair(self.origin[0] + u * self.u_dir[0] + v * self.v_dir[0],
                           self.origin[1] + u * self.u_dir[1] + v * self.v_dir[1])

    def to_json(self) -> dict:
        return {k: [[c.real, c.imag] for c in getattr(self, k)] for k in ("origin", "u_dir", "v_dir")}

    @classmethod
    def from_json(cls, data: dict) -> "Slice":
        def pair(key, default):
            raw = data.get(key)
            return default if raw is None else tuple(complex(float(r), float(i)) for r, i in raw)
        base = cls()
        return cls(pair("origin", base.origin), pair("u_dir", base.u_dir), pair("v_dir", base.v_dir))


@dataclass(frozen=True)
class Grid:
    nx: int
    ny: int
    bounds: tuple  # (u0, u1, v0, v1)

    def __post_init__(self):
        if not (isinstance(self.nx, int) and isinstance(self.ny, int)) or self.nx < 1 or self.ny < 1:
            raise HenonError("bad-grid", "grid needs nx, ny >= 1")
        if len(self.bounds) != 4 or not all(math.isfinite(float(b)) for b in self.bounds):
            raise HenonError("bad-grid", "bounds must be four finite numbers")
        u0, u1, v0, v1 = (float(b) for b in self.bounds)
        if u0 > u1 or v0 > v1 or (self.nx > 1 and u0 == u1) or (self.ny > 1 and v0 == v1):
            raise HenonError("bad-grid", "bounds must be increasing")
        object.__setattr__(self, "bounds", (u0, u1, v0, v1))

    @staticmethod
    def _axis(lo: float, hi: float, n: int) -> list[float]:
        if n == 1:
            return [0.5 * (lo + hi)]
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]

    @property
    def us(self) -> list[float]:
        return self._axis(self.bounds[0], self.bounds[1], self.nx)

    @property
    def vs(self) -> list[float]:
        return self._axis(self.bounds[2], self.bounds[3], self.ny)


@dataclass(frozen=True)
class RenderConfig:
    grid: Grid
    level: float = 2.0
    slice: Slice = field(default_factory=Slice)
    tol: float = DEFAULT_TOL
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    u: float
    v: float
    estimate: GreenEstimate
    tag: str


def _render_row(args) -> list[Cell]:
    hmap, cfg, row, v = args
    out = []
    for col, u in enumerate(cfg.grid.us):
        est = green_plus(hmap, cfg.slice.point(u, v), tol=cfg.tol, budget=cfg.budget)
        out.append(Cell(row, col, u, v, est, classify_estimate(est, cfg.level).value))
    return out


def render_slice(hmap: HenonMap, cfg: RenderConfig) -> list[Cell]:
    if cfg.level <= 0:
        raise HenonError("bad-level", "level must be positive")
    jobs = [(hmap, cfg, row, v) for row, v in enumerate(cfg.grid.vs)]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_render_row, jobs))
    else:
        rows = [_render_row(job) for job in jobs]
    return [cell for row in rows for cell in row]


def gray_level(value: float, scale: float) -> int:
    return int(round(255 * min(max(value / scale, 0.0), 1.0)))


def write_csv(hmap: HenonMap, cfg: RenderConfig, cells: list[Cell], path: str | Path) -> None:
    u0, u1, v0, v1 = cfg.grid.bounds
    lines = [
        "# shortc2 render v1",
        f"# map {json.dumps(map_to_json(hmap), sort_keys=True)}",
        f"# slice {json.dumps(cfg.slice.to_json(), sort_keys=True)}",
        f"# bounds {u0!r} {u1!r} {v0!r} {v1!r}",
        f"# shape {cfg.grid.nx} {cfg.grid.ny}",
        f"# level {cfg.level!r} tol {cfg.tol!r} budget {cfg.budget}",
        "row,col,u,v,value,error_bound,iterations,status,tag",
    ]
    for c in cells:
        e = c.estimate
        bound = "" if e.error_bound is None else repr(e.error_bound)
        lines.append(f"{c.row},{c.col},{c.u!r},{c.v!r},{e.value!r},{bound},{e.iterations},{e.status},{c.tag}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_pgm(cfg: RenderConfig, cells: list[Cell], path: str | Path) -> None:
    header = f"P5\n{cfg.grid.nx} {cfg.grid.ny}\n255\n".encode("ascii")
    body = bytes(gray_level(c.estimate.value, cfg.level) for c in cells)
    Path(path).write_bytes(header + body)


def sidecar(hmap: HenonMap, cfg: RenderConfig) -> dict:
    return {
        "format": "P5",
        "width": cfg.grid.nx,
        "height": cfg.grid.ny,
        "maxval": 255,
        "row_order": "row 0 is v = bounds[2]",
        "mapping": {"kind": "affine", "offset": 0.0, "scale": cfg.level,
                    "formula": "gray = round(255 * clip(value / scale, 0, 1))"},
        "map": map_to_json(hmap),
        "slice": cfg.slice.to_json(),
        "bounds": list(cfg.grid.bounds),
        "level": cfg.level,
        "tol": cfg.tol,
        "budget": cfg.budget,
        "calibration": {
            "note": "R_eps is computed numerically from the certified tail bound, not taken from a closed form",
            "R_eps_at_tol": radius_for_accuracy(hmap, cfg.tol),
        },
    }


def write_all(hmap: HenonMap, cfg: RenderConfig, out_dir: str | Path, stem: str = "render") -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells = render_slice(hmap, cfg)
    csv_path, pgm_path, meta_path = out / f"{stem}.csv", out / f"{stem}.pgm", out / f"{stem}.json"
    write_csv(hmap, cfg, cells, csv_path)
    write_pgm(cfg, cells, pgm_path)
    meta_path.write_text(json.dumps(sidecar(hmap, cfg), indent=2, sort_keys=True) + "\n")
    escaped = [c.estimate for c in cells if c.estimate.escaped]
    return {
        "csv": str(csv_path),
        "pgm": str(pgm_path),
        "sidecar": str(meta_path),
        "shape": [cfg.grid.nx, cfg.grid.ny],
        "cells": len(cells),
        "max_value": max((e.value for e in escaped), default=0.0),
        "max_error_bound": max((e.error_bound for e in escaped), default=0.0),
        "tags": {t: sum(1 for c in cells if c.tag == t) for t in sorted({c.tag for c in cells})},
    }


def config_to_json(cfg: RenderConfig) -> dict:
    return {
        "grid": {"nx": cfg.grid.nx, "ny": cfg.grid.ny, "bounds": list(cfg.grid.bounds)},
        "level": cfg.level,
        "slice": cfg.slice.to_json(),
        "tol": cfg.tol,
        "budget": cfg.budget,
        "workers": cfg.workers,
    }


def config_from_json(data: dict) -> RenderConfig:
    try:
        g = data["grid"]
        grid = Grid(int(g["nx"]), int(g["ny"]), tuple(float(b) for b in g["bounds"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise HenonError("bad-grid", f"bad grid config: {exc}") from exc
    return RenderConfig(
        grid=grid,
        level=float(data.get("level", 2.0)),
        slice=Slice.from_json(data.get("slice", {})),
        tol=float(data.get("tol", DEFAULT_TOL)),
        budget=int(data.get("budget", DEFAULT_BUDGET)),
        workers=int(data.get("workers", 1)),
    )

