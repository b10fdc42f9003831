"""Monopole-formula series against the closed forms, plus the CI diagnostic.

    python3 scripts/hilbert_table.py --truncate 40
"""

import argparse
import time

from multiloop.monopole import GaugeSpec, ci_diagnostic, closed_form_gl2, closed_form_gl3, slodowy_closed_form
from multiloop.monopole import truncated_hilbert
from multiloop.series import expand_closed_form, series_equal


def row(rank, r, D):
    t0 = time.perf_counter()
    got = truncated_hilbert(GaugeSpec(rank, r), D)
    cf = closed_form_gl2(r) if rank == 2 else closed_form_gl3(r)
    cmp = series_equal(got, expand_closed_form(cf, D))
    status = "match" if cmp else f"mismatch at t^{cmp.degree}"
    head = " ".join(str(c) for c in got.coefficients[:12])
    print(f"GL({rank}) r={r} D={D}: {status} ({time.perf_counter() - t0:.2f}s)")
    print(f"    series: {head} ...")
    print(f"    closed: {cf}")
    print(f"    ci:     {ci_diagnostic(cf)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--truncate", "-D", type=int, default=40)
    ap.add_argument("--gl3-truncate", type=int, default=30)
    args = ap.parse_args()
    for r in range(2, 6):
        row(2, r, args.truncate)
    for r in (2, 3):
        row(3, r, args.gl3_truncate)
    a = expand_closed_form(closed_form_gl3(3), 20)
    b = expand_closed_form(slodowy_closed_form(3), 20)
    cmp = series_equal(a, b)
    print(f"GL(3) r=3 vs Slodowy series: first mismatch at t^{cmp.degree} ({cmp.left} vs {cmp.right})")
    print("    coulomb:", " ".join(map(str, a.coefficients[:10])))
    print("    slodowy:", " ".join(map(str, b.coefficients[:10])))


if __name__ == "__main__":
    main()
