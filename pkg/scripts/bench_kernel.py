"""Timings for the exact-arithmetic hot paths.

    python3 scripts/bench_kernel.py --repeat 3
"""

import argparse
import json
import time

from multiloop.coulomb import EtaleChart, check_jacobi, check_relation_starlet
from multiloop.matrix import det_cofactor, det_fraction_free
from multiloop.relations import abstract_ring, discriminant
from multiloop.slice import SliceContext, build_A, flavored_slice_relation


def bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


CASES = {
    "D^8 expansion": lambda: discriminant(abstract_ring()) ** 8,
    "starlet substitution r=5": lambda: check_relation_starlet(EtaleChart(5)),
    "det A bareiss r=4": lambda: det_fraction_free(build_A(SliceContext(4))),
    "det A bareiss r=5": lambda: det_fraction_free(build_A(SliceContext(5))),
    "det A cofactor r=3": lambda: det_cofactor(build_A(SliceContext(3))),
    "jacobi r=4": lambda: check_jacobi(EtaleChart(4)),
    "flavored slice r=4": lambda: flavored_slice_relation(SliceContext(4), check_charpoly=False),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    out = {name: bench(fn, args.repeat) for name, fn in CASES.items()}
    if args.json:
        print(json.dumps({k: round(v, 4) for k, v in out.items()}, indent=2))
    else:
        for name, t in out.items():
            print(f"{name:28s} {t * 1000:9.1f} ms")


if __name__ == "__main__":
    main()
