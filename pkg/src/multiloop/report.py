"""Check registry, suite runner and report emission.

Each named check expands a SuiteConfig into parameter sets, runs once per
set and yields a CheckReport. Reports are sorted by (name, parameters)
before emission so JSON output is byte-stable; wall time is only written
when explicitly requested.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

SCHEMA_VERSION = 1
GOLDEN_ENV = "MULTILOOP_GOLDEN_DIR"
STATUSES = ("pass", "fail", "skipped")

# largest r accepted per check family; the slice side needs r >= 2
R_LIMITS = {
    "starlet": (1, 8),
    "redundancy": (1, 8),
    "hilbert": (1, 8),
    "slodowy": (3, 4),
    "slice": (2, 6),
    "trace": (2, 5),
    "poisson": (1, 5),
    "hanany": (1, 6),
    "hanany-stated": (1, 6),
    "sl2-action": (1, 5),
    "flavor": (2, 4),
}


class ConfigError(ValueError):
    """Invalid suite configuration (usage error, exit code 2)."""


def default_golden_dir() -> Path:
    env = os.environ.get(GOLDEN_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "golden"


@dataclass(frozen=True)
class SuiteConfig:
    r_min: int = 2
    r_max: int = 3
    flavored: bool = False
    truncate: int = 40
    checks: tuple = ()  # empty means the default set
    fmt: str = "text"
    golden_dir: Path | None = None
    rank: int | None = None  # hilbert only; None runs both GL(2) and GL(3)
    negative_controls: bool = False
    bless: bool = False
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.r_min > self.r_max:
            raise ConfigError(f"empty r-range {self.r_min}..{self.r_max}")
        if self.r_min < 1:
            raise ConfigError("r must be >= 1")
        if self.truncate < 0:
            raise ConfigError("truncation D must be >= 0")
        if self.fmt not in ("text", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.rank not in (None, 2, 3):
            raise ConfigError("rank must be 2 or 3")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(sorted(unknown))}; "
                              f"choose from {', '.join(sorted(CHECKS))}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    @property
    def r_values(self):
        return range(self.r_min, self.r_max + 1)

    @property
    def selected(self) -> tuple:
        if self.checks:
            return tuple(sorted(set(self.checks)))
        base = [c for c in DEFAULT_CHECKS if c != "flavor" or self.flavored]
        return tuple(sorted(base))

    @property
    def golden(self) -> Path:
        return Path(self.golden_dir) if self.golden_dir else default_golden_dir()


@dataclass
class CheckReport:
    name: str
    params: dict
    status: str
    witness: str | None = None
    derived: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError(f"failing check {self.name} carries no witness")

    @property
    def sort_key(self):
        return self.name, self.params.get("r", 0), json.dumps(self.params, sort_keys=True)

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "check": self.name,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "derived": {k: str(v) for k, v in self.derived.items()},
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _result(ok: bool, witness=None, derived=None) -> tuple:
    return ("pass" if ok else "fail"), (None if ok else (witness or "check returned false")), derived or {}


# --- individual checks ----------------------------------------------------------
# each returns (status, witness, derived) for one parameter set

def _check_starlet(r, mutation=None, exponent=None, **_):
    from .coulomb import EtaleChart, check_relation_starlet
    v = check_relation_starlet(EtaleChart(r), exponent=exponent, mutation=mutation)
    return _result(v.ok, v.witness)


def _check_redundancy(r, flip=False, **_):
    from .coulomb import EtaleChart, check_redundancy
    v = check_redundancy(EtaleChart(r), flip_sign=flip)
    return _result(v.ok, v.witness)


def _check_hilbert(r, rank, D, **_):
    from .monopole import GaugeSpec, check_regions, ci_diagnostic, closed_form_gl2, closed_form_gl3, truncated_hilbert
    from .series import expand_closed_form, series_equal
    spec = GaugeSpec(rank, r)
    cf = closed_form_gl2(r) if rank == 2 else closed_form_gl3(r)
    cmp = series_equal(truncated_hilbert(spec, D), expand_closed_form(cf, D))
    derived = {"closed_form": str(cf), "ci": str(ci_diagnostic(cf))}
    if not cmp:
        return _result(False, f"series mismatch at degree {cmp.degree}: {cmp.left} vs {cmp.right}", derived)
    regions, total_ok = check_regions(spec, min(D, 20))
    bad = [reg for reg in regions if not reg.enumerated_matches]
    if bad:
        return _result(False, f"region {bad[0].name} mismatch at degree {bad[0].mismatch_degree}", derived)
    return _result(total_ok, "region summands do not add up to the closed form", derived)


def _check_slodowy(r, D, **_):
    from .monopole import closed_form_gl3, slodowy_closed_form
    from .series import expand_closed_form, series_equal
    cap = min(D, 20)
    cmp = series_equal(expand_closed_form(closed_form_gl3(r), cap), expand_closed_form(slodowy_closed_form(r), cap))
    if cmp:
        return _result(False, f"no mismatch through degree {cap}")
    return _result(True, derived={"first_mismatch": cmp.degree, "coulomb": cmp.left, "slodowy": cmp.right})


def _check_slice(r, **_):
    from .slice import SliceContext, sl2_triple_identities, slice_structure
    out = dict(sl2_triple_identities(r))
    out.update(slice_structure(SliceContext(r)))
    bad = [k for k, ok in out.items() if not ok]
    return _result(not bad, f"failed: {', '.join(bad)}")


def _check_trace(r, **_):
    from .algebra import format_rational
    from .relations import abstract_ring, starlet_polynomial
    from .slice import IdentityError, SliceContext, slice_relation, solve_trace_conditions
    ctx = SliceContext(r)
    try:
        sol = solve_trace_conditions(ctx)
        rel = slice_relation(ctx, sol)
    except IdentityError as exc:
        return _result(False, str(exc))
    derived = {f"alpha_{k}": format_rational(a) for k, a in enumerate(sol.alphas, start=1)}
    want = -starlet_polynomial(r, ring=abstract_ring())
    if rel != want:
        return _result(False, f"det A + starlet = {rel - want}", derived)
    return _result(True, derived=derived)


def _check_poisson(r, **_):
    from .coulomb import EtaleChart, bracket_x1_y1, check_jacobi, check_poifo, check_sl2_grading
    chart = EtaleChart(r)
    for fn in (check_poifo, check_jacobi, check_sl2_grading):
        v = fn(chart)
        if not v:
            return _result(False, f"{fn.__name__}: {v.witness}")
    return _result(True, derived={"{x1,y1}": str(bracket_x1_y1(r))})


def _check_hanany(r, stated=False, **_):
    from .coulomb import check_hanany_form, consistent_hanany_scale
    v = check_hanany_form(r, None if stated else consistent_hanany_scale(r))
    return _result(v.ok, v.witness, v.details)


def _check_hanany_stated(r, **_):
    return _check_hanany(r, stated=True)


def _check_sl2_action(r, **_):
    from .coulomb import check_sl2_action_invariance
    v = check_sl2_action_invariance(r)
    return _result(v.ok, v.witness)


def _check_flavor(r, mutation=None, **_):
    from .coulomb import EtaleChart, check_relation_flavored, check_sigma_parity, specialize_z
    from .relations import abstract_ring, flavored_relation_polynomial, starlet_polynomial
    v = check_relation_flavored(EtaleChart(r, True), mutation, cross_check_slice=mutation is None)
    if not v or mutation is not None:
        return _result(v.ok, v.witness)
    for k in range(r + 1):
        p = check_sigma_parity(r, k)
        if not p:
            return _result(False, f"sigma parity k={k}: {p.witness}")
    at_zero = specialize_z(flavored_relation_polynomial(r), abstract_ring())
    if at_zero != -starlet_polynomial(r):
        return _result(False, f"z -> 0 gives {at_zero}")
    return _result(True)


CHECKS = {
    "starlet": _check_starlet,
    "redundancy": _check_redundancy,
    "hilbert": _check_hilbert,
    "slodowy": _check_slodowy,
    "slice": _check_slice,
    "trace": _check_trace,
    "poisson": _check_poisson,
    "hanany": _check_hanany,
    "hanany-stated": _check_hanany_stated,
    "sl2-action": _check_sl2_action,
    "flavor": _check_flavor,
}
# hanany-stated is the literal 4^r/sqrt(2) rescaling, which does not hold; opt in with --checks
DEFAULT_CHECKS = tuple(c for c in CHECKS if c != "hanany-stated")

# derived constants frozen in golden files
GOLDEN_CHECKS = {"trace", "poisson", "hanany"}


def expand(config: SuiteConfig) -> list:
    """All (check, params) pairs for a config, in deterministic order."""
    jobs = []
    for name in config.selected:
        lo, hi = R_LIMITS[name]
        for r in config.r_values:
            if not lo <= r <= hi:
                jobs.append((name, {"r": r}, "skipped"))
                continue
            if name == "hilbert":
                for rank in ([config.rank] if config.rank else [2, 3]):
                    # GL(3) enumeration is cubic in D; the closed form is checked to 30
                    D = config.truncate if rank == 2 else min(config.truncate, 30)
                    jobs.append((name, {"r": r, "rank": rank, "D": D}, None))
            elif name == "slodowy":
                jobs.append((name, {"r": r, "D": config.truncate}, None))
            else:
                jobs.append((name, {"r": r}, None))
            if config.negative_controls:
                jobs.extend((name, p, None) for p in _controls(name, r))
    return jobs


def _controls(name: str, r: int) -> list:
    from .coulomb import SIGN_MUTATIONS
    if name == "starlet":
        return ([{"r": r, "mutation": m} for m in SIGN_MUTATIONS]
                + [{"r": r, "exponent": r + 1}, {"r": r, "exponent": r - 1}])
    if name == "redundancy":
        return [{"r": r, "flip": True}]
    if name == "flavor" and r >= 2:
        return [{"r": r, "mutation": m} for m in SIGN_MUTATIONS]
    return []


def _run_one(job) -> CheckReport:
    name, params, preset = job
    if preset == "skipped":
        return CheckReport(name, params, "skipped")
    t0 = time.perf_counter()
    try:
        status, witness, derived = CHECKS[name](**params)
    except ArithmeticError as exc:
        status, witness, derived = "fail", f"{type(exc).__name__}: {exc}", {}
    return CheckReport(name, params, status, witness, derived, time.perf_counter() - t0)


def _golden_path(golden_dir: Path, report: CheckReport) -> Path:
    tag = "-".join(f"{k}{v}" for k, v in sorted(report.params.items()))
    return golden_dir / f"{report.name}-{tag}.json"


def _apply_golden(report: CheckReport, golden_dir: Path, bless: bool) -> CheckReport:
    if report.name not in GOLDEN_CHECKS or report.status != "pass" or set(report.params) != {"r"}:
        return report
    path = _golden_path(golden_dir, report)
    current = {k: str(v) for k, v in report.derived.items()}
    if bless:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(current, indent=2, sort_keys=True) + "\n")
        return report
    if not path.exists():
        return report
    frozen = json.loads(path.read_text())
    if frozen != current:
        diff = sorted(k for k in set(frozen) | set(current) if frozen.get(k) != current.get(k))
        witness = "golden mismatch: " + "; ".join(f"{k}: {frozen.get(k)} -> {current.get(k)}" for k in diff)
        return replace(report, status="fail", witness=witness)
    return report


def run_suite(config: SuiteConfig) -> list:
    jobs = expand(config)
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    reports = [_apply_golden(rep, config.golden, config.bless) for rep in reports]
    return sorted(reports, key=lambda rep: rep.sort_key)


def suite_passed(reports) -> bool:
    return all(rep.status != "fail" for rep in reports)


def emit_report(reports, fmt: str = "text", timings: bool = False) -> bytes:
    reports = sorted(reports, key=lambda rep: rep.sort_key)
    if fmt == "json":
        return (json.dumps([rep.to_dict(timings) for rep in reports], indent=2, sort_keys=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for rep in reports:
        params = " ".join(f"{k}={v}" for k, v in sorted(rep.params.items()))
        line = f"{rep.status.upper():8} {rep.name:14} {params}"
        if timings:
            line += f"  ({rep.wall_time:.2f}s)"
        lines.append(line)
        for k, v in rep.derived.items():
            lines.append(f"{'':9}{k} = {v}")
        if rep.witness:
            lines.append(f"{'':9}witness: {rep.witness}")
    counts = {s: sum(rep.status == s for rep in reports) for s in STATUSES}
    lines.append(" ".join(f"{s}={n}" for s, n in counts.items()))
    return ("\n".join(lines) + "\n").encode()
