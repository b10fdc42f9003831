"""Table of the trace-condition constants alpha_k (b_k = alpha_k D^k).

    python3 scripts/alpha_table.py --rmax 6
    python3 scripts/alpha_table.py --rmax 4 --oracle   # also solve with sympy
"""

import argparse
import sys
import time
from pathlib import Path

from multiloop.algebra import format_rational
from multiloop.relations import starlet_polynomial
from multiloop.slice import SliceContext, slice_relation, solve_trace_conditions


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmin", type=int, default=2)
    ap.add_argument("--rmax", type=int, default=5)
    ap.add_argument("--oracle", action="store_true", help="cross-check against sympy (slow past r=4)")
    args = ap.parse_args()

    if args.oracle:
        sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
        import sympy_oracle

    for r in range(args.rmin, args.rmax + 1):
        t0 = time.perf_counter()
        ctx = SliceContext(r)
        sol = solve_trace_conditions(ctx)
        ok = slice_relation(ctx, sol) == -starlet_polynomial(r)
        dt = time.perf_counter() - t0
        alphas = ", ".join(format_rational(a) for a in sol.alphas)
        line = f"r={r}  alphas=[{alphas}]  relation={'ok' if ok else 'MISMATCH'}  {dt:.2f}s"
        if args.oracle:
            want, _ = sympy_oracle.alphas(r)
            same = [str(a) for a in want] == [format_rational(a) for a in sol.alphas]
            line += f"  sympy={'agrees' if same else 'DIFFERS'}"
        print(line)


if __name__ == "__main__":
    main()
