"""Command-line interface.

    twpainleve hm        [--t-min --t-max --step]           t, q, q', u
    twpainleve tw        --beta B [--internal-time]         t, lnF, F, pdf
    twpainleve series    --tail plus|minus --order N        coefficient table
    twpainleve verify                                       JSON residual report
    twpainleve frobenius --kind pole|zero --family k        local residual scan
    twpainleve oracle    --beta 2                           Fredholm vs Painleve

Output goes to ``--out`` or, if unset, to $TWPAINLEVE_OUTPUT_DIR/<command>.<fmt>
when that variable is set, else to stdout.  Exit codes: 0 success, 1 usage
error, 2 numerical failure, 3 verification failure (report still written).
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import beta6_connection as b6
from . import distribution as ds
from . import pii_core
from . import tail_series as ts

OUT_DIR_ENV = "TWPAINLEVE_OUTPUT_DIR"
COMMANDS = ("hm", "tw", "series", "verify", "frobenius", "oracle")
TOL_RANGE = (1e-13, 1e-4)
MAX_ORDER = 16

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical failure
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: int = 2
    t_min: float = -10.0
    t_max: float = 6.0
    step: float = 0.05
    tol: float = 1e-10
    order: int = 8
    format: str = "csv"
    out: str | None = None
    internal_time: bool = False
    branch: str = "superposed"
    tail: str = "minus"
    kind: str = "pole"
    family: int = 1
    plot: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.step > 0:
            raise UsageError("--step must be positive")
        if not self.t_min < self.t_max:
            raise UsageError("--t-min must be below --t-max")
        if not TOL_RANGE[0] <= self.tol <= TOL_RANGE[1]:
            raise UsageError(f"--tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
        if not 1 <= self.order <= MAX_ORDER:
            raise UsageError(f"--order must lie in [1, {MAX_ORDER}]")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.command == "tw" and self.beta not in ds.BETAS:
            raise UsageError(f"--beta must be one of {ds.BETAS}")
        if self.command == "oracle" and self.beta != 2:
            raise UsageError("the oracle exists for --beta 2 only")
        if self.command == "frobenius" and self.family not in (1, 2, 3):
            raise UsageError("--family must be 1, 2 or 3")
        return self


def _num(x):
    # repr is the shortest round-trip form and never locale-dependent
    return repr(float(x))


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _num(v) for v in row) + "\n")
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=1, allow_nan=True) + "\n"


def _grid(cfg):
    n = int(round((cfg.t_max - cfg.t_min) / cfg.step))
    return cfg.t_min + cfg.step * np.arange(n + 1)


def _solution(cfg):
    # the shooting solve accepts [1e-13, 1e-6] but is only guaranteed down to
    # its default; tighter requests still tighten the downstream quadratures
    return pii_core.solve_hm(tol=float(np.clip(cfg.tol, pii_core.DEFAULT_TOL, 1e-6)))


def cmd_hm(cfg):
    sol = _solution(cfg)
    grid = _grid(cfg)
    pts = [pii_core.eval(sol, t) for t in grid]
    cols = {"t": grid, "q": [p.q for p in pts], "qp": [p.qp for p in pts],
            "u": [p.u for p in pts]}
    if cfg.plot:
        from . import plotting
        plotting.plot_hm(grid, cols["q"], cols["qp"], cols["u"], cfg.plot)
    if cfg.format == "json":
        return _json({"grid": list(map(float, grid)), "q": cols["q"], "qp": cols["qp"],
                      "u": cols["u"]}), EXIT_OK
    return _csv(["t", "q", "qp", "u"], zip(*cols.values())), EXIT_OK


def cmd_tw(cfg):
    sol = _solution(cfg)
    tab = ds.build_table(cfg.beta, cfg.t_min, cfg.t_max, cfg.step, tol=min(cfg.tol, 1e-8),
                         sol=sol, internal=cfg.internal_time, branch=cfg.branch)
    if not np.all(np.isfinite(tab.lnF)):
        k = int(np.argmin(np.isfinite(tab.lnF)))
        raise ArithmeticError(f"build_table: non-finite ln F at t={tab.grid[k]:.6g}")
    if cfg.plot:
        from . import plotting
        plotting.plot_distribution(tab, cfg.plot)
    if cfg.format == "json":
        return _json(tab.to_dict()), EXIT_OK
    return _csv(["t", "lnF", "F", "pdf"], zip(tab.grid, tab.lnF, tab.F, tab.pdf)), EXIT_OK


def series_table(tail, order):
    """(header, rows) of the coefficient table; rows are float tuples."""
    if tail == "plus":
        T = ts.build_plus(order)
        last = ("phi_n", T.phi)
    elif tail == "minus":
        T = ts.build_minus(order)
        last = ("h_n", T.h)
    else:
        raise UsageError("--tail must be plus or minus")
    cols = [T.C, T.g, T.u, last[1]]
    # left-tail h steps in x^{-3n/2}, the others in x^{-3n}: missing cells are None
    n = min(order + 1, max(len(c) for c in cols))
    rows = [(k, *(float(c[k]) if k < len(c) else None for c in cols)) for k in range(n)]
    return ["n", "C_n", "g_n", "u_n", last[0]], rows


def cmd_series(cfg, tail):
    header, rows = series_table(tail, cfg.order)
    if cfg.plot:
        from . import plotting
        plotting.plot_series(rows, header, cfg.plot)
    if cfg.format == "json":
        return _json({"tail": tail, "order": cfg.order,
                      **{h: [r[j] for r in rows] for j, h in enumerate(header)}}), EXIT_OK
    body = io.StringIO()
    body.write(",".join(header) + "\n")
    for r in rows:
        cells = ("" if v is None else _num(v) for v in r[1:])
        body.write(str(r[0]) + "," + ",".join(cells) + "\n")
    return body.getvalue(), EXIT_OK


def cmd_verify(cfg):
    from .verification import run_suite

    report = run_suite()
    ok = all(r["passed"] for r in report)
    if cfg.plot:
        from . import plotting
        plotting.plot_verify(report, cfg.plot)
    if cfg.format == "csv":
        text = _csv(["name", "max_residual", "tolerance", "passed"],
                    [(r["name"], r["max_residual"], r["tolerance"], str(r["passed"]).lower())
                     for r in report])
    else:
        text = _json({"passed": ok, "checks": report})
    return text, EXIT_OK if ok else EXIT_VERIFY


FROB_Z = (0.3, 0.2, 0.15, 0.1, 0.075, 0.05)


def cmd_frobenius(cfg):
    from .verification import frobenius as fb
    from .verification import suite

    key = (cfg.kind, cfg.family)
    ls = fb.local_family(cfg.kind, cfg.family, suite.FROB_T0, suite.FROB_FREE[key],
                         N=10, u0=suite.FROB_U0, pii=suite.FROB_PII[cfg.kind])
    res = [fb.local_residual(ls, z) for z in FROB_Z]
    if cfg.plot:
        from . import plotting
        plotting.plot_frobenius(FROB_Z, res, cfg.plot, labels=("mu+", "mu-", "nu"))
    if cfg.format == "json":
        return _json({"kind": cfg.kind, "family": cfg.family,
                      "exponents": [str(e) for e in ls.exponents],
                      "z": list(FROB_Z), "residuals": [list(map(float, r)) for r in res]}), EXIT_OK
    return _csv(["z", "r_mu_plus", "r_mu_minus", "r_nu"],
                [(z, *r) for z, r in zip(FROB_Z, res)]), EXIT_OK


def cmd_oracle(cfg):
    from .verification import oracle

    lo, hi = max(cfg.t_min, -8.0), min(cfg.t_max, 4.0)
    if not lo < hi:
        raise UsageError("the oracle range is [-8, 4]")
    n = int(round((hi - lo) / cfg.step))
    grid = lo + cfg.step * np.arange(n + 1)
    sol = _solution(cfg)
    tab = ds.build_table(2, lo, lo + cfg.step * n, cfg.step, sol=sol)
    Ff = np.array([oracle.fredholm_tw2(t) for t in grid])
    if cfg.plot:
        from . import plotting
        plotting.plot_oracle(grid, tab.F, Ff, cfg.plot)
    if cfg.format == "json":
        return _json({"beta": 2, "grid": grid.tolist(), "F_fredholm": Ff.tolist(),
                      "F_painleve": tab.F.tolist()}), EXIT_OK
    return _csv(["t", "F_fredholm", "F_painleve", "diff"],
                zip(grid, Ff, tab.F, Ff - tab.F)), EXIT_OK


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--beta", type=int, default=None)
    common.add_argument("--t-min", type=float, default=-10.0)
    common.add_argument("--t-max", type=float, default=6.0)
    common.add_argument("--step", type=float, default=0.05)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--plot", default=None, metavar="PATH",
                        help="also render a matplotlib figure to PATH")

    p = _Parser(prog="twpainleve", description="Tracy-Widom distributions via Painleve II")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("hm", parents=[common], help="Hastings-McLeod q, q', u")
    tw = sub.add_parser("tw", parents=[common], help="distribution table")
    tw.add_argument("--internal-time", action="store_true",
                    help="use the native variable of F_0 instead of physical t")
    tw.add_argument("--branch", choices=("superposed", "single"), default="superposed",
                    help="beta = 4 branch choice")
    se = sub.add_parser("series", parents=[common], help="tail coefficient tables")
    se.add_argument("--tail", choices=("plus", "minus"), default="minus")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    fr = sub.add_parser("frobenius", parents=[common], help="local series residual scan")
    fr.add_argument("--kind", choices=("pole", "zero"), default="pole")
    fr.add_argument("--family", type=int, default=1)
    sub.add_parser("oracle", parents=[common], help="beta = 2 Fredholm oracle")
    return p


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    fmt = ns.format or ("json" if ns.command == "verify" else "csv")
    beta = ns.beta if ns.beta is not None else (6 if ns.command == "tw" else 2)
    return RunConfig(command=ns.command, beta=beta, t_min=ns.t_min, t_max=ns.t_max,
                     step=ns.step, tol=ns.tol, order=ns.order, format=fmt, out=ns.out,
                     internal_time=getattr(ns, "internal_time", False),
                     branch=getattr(ns, "branch", "superposed"),
                     tail=getattr(ns, "tail", "minus"), kind=getattr(ns, "kind", "pole"),
                     family=getattr(ns, "family", 1), plot=ns.plot).validate()


def run(cfg: RunConfig):
    """Execute a validated config; returns (text, exit status)."""
    if cfg.command == "hm":
        return cmd_hm(cfg)
    if cfg.command == "tw":
        return cmd_tw(cfg)
    if cfg.command == "series":
        return cmd_series(cfg, cfg.tail)
    if cfg.command == "verify":
        return cmd_verify(cfg)
    if cfg.command == "frobenius":
        return cmd_frobenius(cfg)
    return cmd_oracle(cfg)


def _destination(cfg):
    if cfg.out:
        return Path(cfg.out)
    d = os.environ.get(OUT_DIR_ENV)
    if d:
        return Path(d) / f"{cfg.command}.{cfg.format}"
    return None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as e:
        print(f"twpainleve: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        text, status = run(cfg)
    except UsageError as e:
        print(f"twpainleve: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (pii_core.SolverError, b6.IntegrationError, ArithmeticError,
            FloatingPointError, ValueError) as e:
        print(f"twpainleve: numerical failure in {cfg.command}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    dest = _destination(cfg)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text, encoding="utf-8")
    return status


if __name__ == "__main__":
    sys.exit(main())
