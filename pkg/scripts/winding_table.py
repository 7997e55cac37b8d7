"""Print the class of H^-n(C0) for n = 0..N and d in {2, 3}, with timings."""

import argparse
import time

from shortc2.boettcher import winding_class
from shortc2.core import HenonMap
from shortc2.topology import canonical_loop, pull_back_loop


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    for d in (2, 3):
        h = HenonMap.make(d, (0,) * (d - 1), 1)
        base = canonical_loop(h, 1)
        for n in range(args.max_n + 1):
            t0 = time.perf_counter()
            loop = base if n == 0 else pull_back_loop(h, base, n)
            cls = winding_class(h, loop)
            print(f"d={d} n={n}  class={cls!s:>8}  samples={len(loop):5d}  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
