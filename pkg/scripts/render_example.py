"""Render G+ on the y-plane x = x0 and write CSV, PGM and sidecar JSON."""

import argparse

from shortc2.core import HenonMap
from shortc2.render import Grid, RenderConfig, Slice, write_all


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--x0", type=complex, default=0j)
    ap.add_argument("--half-width", type=float, default=2.5)
    ap.add_argument("--level", type=float, default=2.0)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out", default="render_out")
    args = ap.parse_args()
    w = args.half_width
    cfg = RenderConfig(Grid(args.size, args.size, (-w, w, -w, w)), level=args.level,
                       slice=Slice((args.x0, 0j), (0j, 1 + 0j), (0j, 1j)), workers=args.workers)
    summary = write_all(HenonMap.make(2, (0,), 1), cfg, args.out)
    print(summary)


if __name__ == "__main__":
    main()
