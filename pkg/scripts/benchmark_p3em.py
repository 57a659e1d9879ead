#!/usr/bin/env python3
"""Empirical runtime of the matching constructor on random instances."""

import argparse
import time

from planar_holant.generators import generate_cubic_plane
from planar_holant.p3em import ExceptionalGraph, find_p3em, verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[50, 100, 200, 400])
    ap.add_argument("--per-size", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for n in args.sizes:
        times = []
        for k in range(args.per_size):
            g = generate_cubic_plane(n, args.seed + k)
            t0 = time.time()
            res = find_p3em(g)
            assert not isinstance(res, ExceptionalGraph)
            assert verify(g, res).ok
            times.append(time.time() - t0)
        print(f"n={n:5d}  avg {sum(times)/len(times):7.3f}s  "
              f"worst {max(times):7.3f}s")


if __name__ == "__main__":
    main()
