"""Command line front end: ``multiloop verify|hilbert|slice|coulomb``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage error.
A flat ``key = value`` config file (``--config``) supplies defaults for the
same options; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

from .report import CHECKS, ConfigError, SuiteConfig, emit_report, run_suite, suite_passed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_r_range(text: str) -> tuple:
    """'3' -> (3, 3); '2..4' or '2-4' -> (2, 4)."""
    for sep in ("..", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad r-range {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty r-range {text!r}")
    return lo, hi


def read_config_file(path) -> dict:
    """Flat key = value file; '#' comments allowed."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[suite]\n" + Path(path).read_text())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return dict(cp["suite"])


def _bool(value: str) -> bool:
    v = str(value).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {value!r}")


_FILE_KEYS = {
    "r": parse_r_range,
    "truncate": int,
    "checks": lambda v: [c.strip() for c in v.split(",") if c.strip()],
    "flavor": _bool,
    "json": _bool,
    "golden_dir": str,
    "rank": int,
    "jobs": int,
    "negative_controls": _bool,
    "timings": _bool,
}


def _merge_config(args) -> None:
    """Fill options the user left unset from the config file."""
    if not getattr(args, "config", None):
        return
    for key, raw in read_config_file(args.config).items():
        key = key.replace("-", "_")
        if key not in _FILE_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key, None) in (None, False):
            try:
                setattr(args, key, _FILE_KEYS[key](raw))
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config key {key}: {exc}") from exc


def _common(p: argparse.ArgumentParser, top: bool) -> None:
    # registered on the main parser and every subparser, so flags work in either position
    kw = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--json", action="store_true", help="machine-readable output", **kw)
    p.add_argument("--truncate", "-D", type=int, metavar="D", help="series truncation degree (default 40)", **kw)
    p.add_argument("--bless", action="store_true", help="rewrite golden files from this run", **kw)
    p.add_argument("--golden-dir", metavar="PATH", help="golden-file directory "
                   "(default $MULTILOOP_GOLDEN_DIR or the packaged one)", **kw)
    p.add_argument("--config", metavar="FILE", help="flat key = value defaults", **kw)
    p.add_argument("--timings", action="store_true", help="include wall time in reports", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multiloop", description=__doc__.splitlines()[0])
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    _common(v, top=False)
    v.add_argument("--r", type=parse_r_range, metavar="R[..R2]", help="r or inclusive range (default 2..3)")
    v.add_argument("--rank", type=int, choices=(2, 3), help="restrict hilbert checks to GL(2) or GL(3)")
    v.add_argument("--checks", type=lambda s: [c for c in s.split(",") if c],
                   help=f"comma list from: {', '.join(CHECKS)}")
    v.add_argument("--flavor", action="store_true", help="include the flavored checks")
    v.add_argument("--negative-controls", action="store_true", help="also run injected mutations (expected to fail)")
    v.add_argument("--jobs", "-j", type=int, help="worker processes")

    h = sub.add_parser("hilbert", help="monopole-formula Hilbert series")
    _common(h, top=False)
    h.add_argument("--rank", type=int, choices=(2, 3), default=2)
    h.add_argument("--loops", type=int, default=2, help="number of loops r")
    h.add_argument("--framing", type=int, default=1)
    h.add_argument("--format", choices=("series", "closed", "both", "json"), default="both")

    s = sub.add_parser("slice", help="Slodowy slice: trace conditions and the slice relation")
    _common(s, top=False)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--flavor", action="store_true")
    s.add_argument("--emit-relation", metavar="FILE", help="write the relation in canonical text")

    c = sub.add_parser("coulomb", help="Coulomb branch generators, relation and brackets")
    _common(c, top=False)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--flavor", action="store_true")
    c.add_argument("--checks", type=lambda s: [x for x in s.split(",") if x],
                   help="comma list from: relation, redundancy, poisson, hanany, sl2-action")
    c.add_argument("--emit-bracket", nargs=2, metavar=("PAIR", "FILE"),
                   help="write a bracket in canonical text (PAIR: x1y1)")
    return parser


def _write(out: str | bytes) -> None:
    if isinstance(out, str):
        out = out.encode()
    sys.stdout.buffer.write(out)
    sys.stdout.flush()


def _suite_exit(config: SuiteConfig) -> int:
    reports = run_suite(config)
    _write(emit_report(reports, config.fmt, config.timings))
    return EXIT_OK if suite_passed(reports) else EXIT_FAIL


def cmd_verify(args) -> int:
    lo, hi = args.r or (2, 3)
    config = SuiteConfig(
        r_min=lo, r_max=hi,
        flavored=bool(args.flavor) or "flavor" in (args.checks or ()),
        truncate=40 if args.truncate is None else args.truncate,
        checks=tuple(args.checks or ()),
        fmt="json" if args.json else "text",
        golden_dir=args.golden_dir,
        rank=args.rank,
        negative_controls=bool(args.negative_controls),
        bless=bool(args.bless),
        jobs=args.jobs or 1,
        timings=bool(args.timings),
    )
    return _suite_exit(config)


def cmd_hilbert(args) -> int:
    from .monopole import GaugeSpec, ci_diagnostic, closed_form_gl2, closed_form_gl3, truncated_hilbert
    from .series import expand_closed_form, series_equal
    D = 40 if args.truncate is None else args.truncate
    try:
        spec = GaugeSpec(args.rank, args.loops, args.framing)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    series = truncated_hilbert(spec, D)
    cf = None
    if args.framing == 1:
        cf = closed_form_gl2(args.loops) if args.rank == 2 else closed_form_gl3(args.loops)
    cmp = series_equal(series, expand_closed_form(cf, D)) if cf else None
    fmt = "json" if args.json else args.format
    if fmt == "json":
        rec = {"schema": 1, "rank": args.rank, "loops": args.loops, "framing": args.framing, "D": D,
               "series": list(series.coefficients)}
        if cf:
            rec.update(closed_form=str(cf), matches=bool(cmp), mismatch_degree=cmp.degree,
                       ci=str(ci_diagnostic(cf)))
        _write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        lines = []
        if fmt in ("series", "both"):
            lines.append(f"H(t) = {series}")
        if fmt in ("closed", "both"):
            if cf:
                lines.append(f"closed form: {cf}")
                lines.append(f"ci diagnostic: {ci_diagnostic(cf)}")
            else:
                lines.append("closed form: none known for framing != 1")
        if cmp is not None:
            lines.append("enumeration matches closed form" if cmp
                         else f"MISMATCH at degree {cmp.degree}: {cmp.left} vs {cmp.right}")
        _write("\n".join(lines) + "\n")
    return EXIT_OK if cmp is None or cmp else EXIT_FAIL


def cmd_slice(args) -> int:
    from .algebra import format_rational
    from .slice import IdentityError, SliceContext, flavored_slice_relation, slice_relation, solve_trace_conditions
    if args.r < 2:
        raise UsageError("the slice needs r >= 2")
    ctx = SliceContext(args.r)
    rec = {"schema": 1, "r": args.r, "flavored": bool(args.flavor)}
    try:
        if args.flavor:
            rel = flavored_slice_relation(ctx)
        else:
            sol = solve_trace_conditions(ctx)
            rec["alphas"] = [format_rational(a) for a in sol.alphas]
            rel = slice_relation(ctx, sol)
        ok = True
    except IdentityError as exc:
        rel, ok = None, False
        rec["witness"] = str(exc)
    rec["status"] = "pass" if ok else "fail"
    if rel is not None:
        rec["relation"] = str(rel)
        if args.emit_relation:
            Path(args.emit_relation).write_text(str(rel) + "\n")
    if args.json:
        _write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        _write("\n".join(f"{k}: {v}" for k, v in rec.items() if k != "schema") + "\n")
    return EXIT_OK if ok else EXIT_FAIL


_COULOMB_CHECKS = {"relation": "starlet", "redundancy": "redundancy", "poisson": "poisson",
                   "hanany": "hanany", "sl2-action": "sl2-action"}


def cmd_coulomb(args) -> int:
    names = args.checks or list(_COULOMB_CHECKS)
    unknown = set(names) - set(_COULOMB_CHECKS)
    if unknown:
        raise UsageError(f"unknown coulomb checks: {', '.join(sorted(unknown))}")
    checks = [_COULOMB_CHECKS[n] for n in names]
    if args.flavor:
        checks.append("flavor")
    if args.emit_bracket:
        pair, path = args.emit_bracket
        if pair != "x1y1":
            raise UsageError("only the x1y1 bracket can be emitted")
        from .coulomb import bracket_x1_y1
        Path(path).write_text(str(bracket_x1_y1(args.r)) + "\n")
    config = SuiteConfig(r_min=args.r, r_max=args.r, flavored=bool(args.flavor), checks=tuple(checks),
                         fmt="json" if args.json else "text", golden_dir=args.golden_dir,
                         bless=bool(args.bless), timings=bool(args.timings),
                         truncate=40 if args.truncate is None else args.truncate)
    return _suite_exit(config)


COMMANDS = {"verify": cmd_verify, "hilbert": cmd_hilbert, "slice": cmd_slice, "coulomb": cmd_coulomb}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    for name in ("json", "bless", "timings"):
        if not hasattr(args, name):
            setattr(args, name, False)
    for name in ("truncate", "golden_dir", "config", "r", "checks", "flavor", "rank", "jobs", "negative_controls"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        _merge_config(args)
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"multiloop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
