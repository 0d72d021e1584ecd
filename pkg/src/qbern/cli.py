"""Command-line front end: compute values, run suites, run oracles.

Exit status: 0 when everything asked for passed (or a value was printed),
1 when a verification suite or oracle found a mismatch, 2 on usage errors.
Reports go to stdout or --out, as text, JSON (sorted keys, no timestamps,
byte-stable for a fixed config and seed), or CSV flattened one row per
item.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import bernoulli, exactnum, series, suites, symmetry
from .exactnum import rat_str
from .qcore import QContext

__all__ = ["RunConfig", "main", "entry", "build_parser"]

COMPUTE_WHAT = ("stirling", "qbern", "qpoly", "degenerate", "kernel", "classical", "series")
VERIFY_WHAT = ("thm1", "thm2", "thm3", "eq20", "eq12", "eq16", "series-factor", "stirling-mu1")


class UsageError(Exception):
    """Bad or missing arguments discovered after parsing."""


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational like 3/4, got {text!r}") from exc


def _weights_arg(text: str) -> Tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not parts or any(x < 1 for x in parts):
        raise argparse.ArgumentTypeError(f"weights must be positive integers, got {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbern",
        description="Exact q-Bernoulli values, identity verification suites, "
                    "and p-adic convergence oracles.",
    )
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters")
    g.add_argument("--n", type=int, help="degree / max degree, meaning depends on subcommand")
    g.add_argument("--m", type=int, help="second index (e.g. for stirling)")
    g.add_argument("--m-max", dest="m_max", type=int, help="sweep degrees 0..m-max")
    g.add_argument("--x", type=_fraction_arg, help="evaluation point")
    g.add_argument("--weights", type=_weights_arg, help="comma-separated positive integers")
    g.add_argument("--q", type=_fraction_arg, help="base, as num/den")
    g.add_argument("--lambda", dest="lam", type=_fraction_arg, help="deformation, as num/den")
    g.add_argument("--p", type=int, default=5, help="odd prime for oracles (default 5)")
    g.add_argument("--precision", type=int, default=12, help="p-adic working precision M")
    g.add_argument("--nmax", type=int, default=5, help="largest Riemann level N")
    g.add_argument("--order", type=int, help="series truncation order")
    g.add_argument("--samples", type=int, help="number of seeded sample points")
    g.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    g.add_argument("--i", type=int, help="kernel bracket power")
    g.add_argument("--t", type=int, help="kernel exponent shift")
    g.add_argument("--b", type=int, default=1, help="kernel base exponent (default 1)")
    g.add_argument("--c", type=int, default=1, help="base exponent: values taken at q^c (default 1)")
    g.add_argument("--variant", choices=("carlitz", "kim"), default="kim",
                   help="series family for `compute series` (default kim)")
    out = common.add_argument_group("output")
    out.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    out.add_argument("--out", help="write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)
    pc = sub.add_parser("compute", parents=[common], help="print one exact value")
    pc.add_argument("what", choices=COMPUTE_WHAT)
    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("what", choices=VERIFY_WHAT)
    po = sub.add_parser("oracle", parents=[common], help="p-adic convergence report")
    po.add_argument("what", choices=suites.ORACLE_FAMILIES, metavar="family")
    return parser


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; the seed pins all sampling."""

    command: str
    what: str
    n: Optional[int]
    m: Optional[int]
    m_max: Optional[int]
    x: Optional[Fraction]
    weights: Optional[Tuple[int, ...]]
    q: Optional[Fraction]
    lam: Optional[Fraction]
    p: int
    precision: int
    nmax: int
    order: Optional[int]
    samples: Optional[int]
    seed: int
    i: Optional[int]
    t: Optional[int]
    b: int
    c: int
    variant: str
    fmt: str
    out: Optional[str]

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(
            command=ns.command, what=ns.what, n=ns.n, m=ns.m, m_max=ns.m_max,
            x=ns.x, weights=ns.weights, q=ns.q, lam=ns.lam, p=ns.p,
            precision=ns.precision, nmax=ns.nmax, order=ns.order,
            samples=ns.samples, seed=ns.seed, i=ns.i, t=ns.t, b=ns.b, c=ns.c,
            variant=ns.variant, fmt=ns.fmt, out=ns.out,
        )


def _need(**named) -> None:
    for name, value in named.items():
        if value is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for this subcommand")


Document = Tuple[dict, Tuple[str, ...], Tuple[Tuple[object, ...], ...], List[str], bool]
# (json_dict, csv_header, csv_rows, text_lines, failed)


def _run_compute(cfg: RunConfig) -> Document:
    what = cfg.what
    params: Dict[str, object] = {}
    if what == "stirling":
        _need(n=cfg.n, m=cfg.m)
        params = {"n": cfg.n, "m": cfg.m}
        rendered = str(exactnum.stirling1(cfg.n, cfg.m))
    elif what == "qbern":
        _need(n=cfg.n, q=cfg.q)
        params = {"n": cfg.n, "q": rat_str(cfg.q), "c": cfg.c}
        table = bernoulli.carlitz_numbers(cfg.n, QContext(cfg.q, c=cfg.c))
        rendered = rat_str(table[cfg.n])
    elif what == "qpoly":
        _need(n=cfg.n, x=cfg.x, q=cfg.q)
        params = {"n": cfg.n, "x": rat_str(cfg.x), "q": rat_str(cfg.q), "c": cfg.c}
        rendered = rat_str(bernoulli.carlitz_poly(cfg.n, cfg.x, QContext(cfg.q, c=cfg.c)))
    elif what == "degenerate":
        _need(n=cfg.n, x=cfg.x, **{"lambda": cfg.lam}, q=cfg.q)
        params = {"n": cfg.n, "x": rat_str(cfg.x), "lambda": rat_str(cfg.lam),
                  "q": rat_str(cfg.q), "c": cfg.c}
        rendered = rat_str(bernoulli.degenerate_qpoly(cfg.n, cfg.x, cfg.lam, QContext(cfg.q, c=cfg.c)))
    elif what == "kernel":
        _need(weights=cfg.weights, i=cfg.i, t=cfg.t, q=cfg.q)
        params = {"weights": ",".join(map(str, cfg.weights)), "i": cfg.i, "t": cfg.t,
                  "q": rat_str(cfg.q), "b": cfg.b}
        rendered = rat_str(symmetry.kernel_K(cfg.weights, cfg.i, cfg.t, cfg.q, cfg.b))
    elif what == "classical":
        _need(n=cfg.n)
        if cfg.x is not None:
            params = {"n": cfg.n, "x": rat_str(cfg.x)}
            rendered = rat_str(bernoulli.classical_poly(cfg.n, cfg.x))
        else:
            params = {"n": cfg.n}
            rendered = rat_str(bernoulli.classical_numbers(cfg.n)[cfg.n])
    else:  # series
        _need(n=cfg.n, x=cfg.x, **{"lambda": cfg.lam})
        fn = series.kim_degenerate if cfg.variant == "kim" else series.carlitz_degenerate
        params = {"n": cfg.n, "x": rat_str(cfg.x), "lambda": rat_str(cfg.lam),
                  "variant": cfg.variant}
        if cfg.order is not None:
            params["order"] = cfg.order
        rendered = rat_str(fn(cfg.n, cfg.x, cfg.lam, cfg.order))

    json_dict = {"command": "compute", "what": what, "params": params, "value": rendered}
    header = ("what", "params", "value")
    rows = ((what, json.dumps(params, sort_keys=True), rendered),)
    return json_dict, header, rows, [rendered], False


def _run_verify(cfg: RunConfig) -> Document:
    what = cfg.what
    if what in ("thm1", "thm2", "thm3", "eq20"):
        _need(weights=cfg.weights)
        xs: Sequence = (cfg.x,) if cfg.x is not None else (0, 1, 2)
        points = None
        if cfg.q is not None:
            points = [(cfg.q, cfg.lam if cfg.lam is not None else Fraction(0))]
        samples = cfg.samples if cfg.samples is not None else 5
        if what == "thm1":
            order = cfg.order if cfg.order is not None else 3
            suite = suites.thm_suite("thm1", [cfg.weights], order, xs=xs,
                                     samples=samples, seed=cfg.seed, points=points)
        else:
            m_max = cfg.m_max if cfg.m_max is not None else (cfg.m if cfg.m is not None else 3)
            suite = suites.thm_suite(what, [cfg.weights], m_max, xs=xs,
                                     samples=samples, seed=cfg.seed, points=points)
    elif what in ("eq12", "eq16"):
        suite = suites.qlemma_suite(what, cfg.samples if cfg.samples is not None else 200, cfg.seed)
    elif what == "series-factor":
        suite = suites.series_factor_suite(cfg.order if cfg.order is not None else 12,
                                           cfg.samples if cfg.samples is not None else 20, cfg.seed)
    else:  # stirling-mu1
        suite = suites.stirling_mu1_suite(cfg.n if cfg.n is not None else 8,
                                          cfg.samples if cfg.samples is not None else 12, cfg.seed)

    lines = [f"{suite.name}: {len(suite.items)} checks"]
    shown = 0
    for item in suite.items:
        failing = item.get("verdict") == "fail" or item.get("equal") is False
        if failing and shown < 5:
            detail = item.get("counterexample") or item
            lines.append("  fail: " + json.dumps(detail, sort_keys=True))
            shown += 1
    lines.append(f"verdict: {'pass' if suite.ok else 'fail'}")
    return suite.to_json_dict(), suite.csv_header, suite.csv_rows, lines, not suite.ok


def _run_oracle(cfg: RunConfig) -> Document:
    n = cfg.n if cfg.n is not None else 2
    x0 = cfg.x if cfg.x is not None else Fraction(0)
    lam = cfg.lam if cfg.lam is not None else Fraction(0)
    rep = suites.oracle_report(cfg.what, n, x0=x0, q=cfg.q, lam=lam,
                               p=cfg.p, M=cfg.precision, nmax=cfg.nmax)
    lines = [
        f"oracle {rep.family}: p={rep.p} q={rat_str(rep.q)} lambda={rat_str(rep.lam)} "
        f"n={rep.n} x0={rat_str(rep.x0)} target={rat_str(rep.target)}"
    ]
    for N, v in rep.rows:
        lines.append(f"  N={N} valuation={'inf' if v == suites.INF else v}")
    lines.append(f"monotone: {'true' if rep.monotone else 'false'}")
    return rep.to_json_dict(), rep.csv_header, rep.csv_rows, lines, not rep.ok


def _render(doc: Document, fmt: str) -> str:
    json_dict, header, rows, text_lines, _ = doc
    if fmt == "json":
        return json.dumps(json_dict, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:                     # argparse handles usage/help itself
        code = exc.code
        return int(code) if isinstance(code, int) else (0 if code is None else 2)
    cfg = RunConfig.from_namespace(ns)
    try:
        if cfg.command == "compute":
            doc = _run_compute(cfg)
        elif cfg.command == "verify":
            doc = _run_verify(cfg)
        else:
            doc = _run_oracle(cfg)
    except UsageError as exc:
        print(f"qbern: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"qbern: error: {exc}", file=sys.stderr)
        return 2
    payload = _render(doc, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 1 if doc[4] else 0


def entry() -> None:
    sys.exit(main())
