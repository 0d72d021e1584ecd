"""Seeded verification suites and oracle reports behind the CLI.

Each suite sweeps a deterministic grid (the seed fully fixes every random
rational), evaluates an exact identity at every cell, and returns a
SuiteResult whose JSON form is byte-stable for a fixed configuration.
Identity evaluators are reached through their modules rather than by
from-imports, so a test can swap one out and watch the verdict flip.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar, Union

from . import bernoulli, exactnum, padic, qcore, series, symmetry
from .exactnum import RationalLike, as_rational, rat_str
from .padic import INF, PadicParams, Valuation
from .qcore import QContext
from .symmetry import DEFAULT_PERMUTATION_CAP, SymmetryReport

__all__ = [
    "SuiteResult",
    "OracleReport",
    "sample_rational",
    "sample_q",
    "q_lam_points",
    "thm_suite",
    "qlemma_suite",
    "series_factor_suite",
    "stirling_mu1_suite",
    "oracle_report",
    "ORACLE_FAMILIES",
]

T = TypeVar("T")
U = TypeVar("U")

ORACLE_FAMILIES = ("carlitz", "degenerate", "mu1")


def _thread_count() -> int:
    raw = os.environ.get("QBERN_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _ordered_map(fn: Callable[[T], U], items: Sequence[T]) -> List[U]:
    """Apply fn to every item; results always in input order.

    QBERN_THREADS > 1 fans the work out to a thread pool; assembly order
    is still the submission order, so reports never depend on scheduling.
    """
    workers = _thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- seeded rational sampling -------------------------------------------------

SPECIAL_Q = (Fraction(0), Fraction(1), Fraction(-1))


def sample_rational(
    rng: random.Random,
    exclude: Sequence[Fraction] = (),
    allow_zero: bool = True,
) -> Fraction:
    """Uniform num/den with num in [-9, 9], den in [1, 9], minus exclusions.

    The small bounds keep the big-integer growth of the nested sums in
    check; they are a sampling choice, not a domain restriction.
    """
    while True:
        val = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if not allow_zero and val == 0:
            continue
        if val in exclude:
            continue
        return val


def sample_q(rng: random.Random) -> Fraction:
    """A random base, rejecting 0 and the roots of unity +-1."""
    return sample_rational(rng, exclude=SPECIAL_Q)


def q_lam_points(samples: int, seed: int) -> List[Tuple[Fraction, Fraction]]:
    """The seeded (q, lam) sample list shared across a suite's grid."""
    rng = random.Random(seed)
    return [(sample_q(rng), sample_rational(rng)) for _ in range(samples)]


# -- result containers --------------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    """One suite's outcome: JSON-ready items plus flat rows for CSV."""

    name: str
    params: Dict[str, object]
    items: Tuple[Dict[str, object], ...]
    ok: bool
    csv_header: Tuple[str, ...]
    csv_rows: Tuple[Tuple[object, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "suite": self.name,
            "params": dict(self.params),
            "verdict": "pass" if self.ok else "fail",
            "items": list(self.items),
        }


def _val_json(v: Valuation) -> Union[int, str]:
    return "inf" if v == INF else int(v)


@dataclass(frozen=True)
class OracleReport:
    """Valuation-growth record for one Riemann-sum family at one point."""

    family: str
    p: int
    q: Fraction
    lam: Fraction
    n: int
    x0: Fraction
    target: Fraction
    rows: Tuple[Tuple[int, Valuation], ...]
    monotone: bool

    @property
    def ok(self) -> bool:
        return self.monotone

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "q": rat_str(self.q),
            "lambda": rat_str(self.lam),
            "n": self.n,
            "x0": rat_str(self.x0),
            "target": rat_str(self.target),
            "rows": [{"N": N, "valuation": _val_json(v)} for N, v in self.rows],
            "monotone": self.monotone,
        }

    @property
    def csv_header(self) -> Tuple[str, ...]:
        return ("family", "p", "q", "lambda", "n", "x0", "N", "valuation", "monotone")

    @property
    def csv_rows(self) -> Tuple[Tuple[object, ...], ...]:
        return tuple(
            (self.family, self.p, rat_str(self.q), rat_str(self.lam), self.n,
             rat_str(self.x0), N, _val_json(v), self.monotone)
            for N, v in self.rows
        )


# -- symmetry suites -----------------------------------------------------------


def thm_suite(
    kind: str,
    weights_list: Sequence[Sequence[int]],
    m_max: int,
    xs: Sequence[RationalLike] = (0, 1, 2),
    samples: int = 10,
    seed: int = 0,
    points: Optional[Sequence[Tuple[Fraction, Fraction]]] = None,
    cap: int = DEFAULT_PERMUTATION_CAP,
) -> SuiteResult:
    """Sweep verify(kind, ...) over weights x degree x argument x samples.

    kind thm1 treats m_max as the series order of a single verify call per
    cell; the other kinds sweep every degree m <= m_max.  points overrides
    the seeded (q, lam) list when given.
    """
    if points is None:
        points = q_lam_points(samples, seed)
    cells: List[Tuple[Tuple[int, ...], int, Fraction, Fraction, Fraction]] = []
    for w in weights_list:
        wtuple = tuple(int(x) for x in w)
        for x in xs:
            for qv, lv in points:
                if kind == "thm1":
                    cells.append((wtuple, m_max, as_rational(x), lv, qv))
                else:
                    for m in range(m_max + 1):
                        cells.append((wtuple, m, as_rational(x), lv, qv))

    def run_cell(cell) -> SymmetryReport:
        w, m, x, lam, q = cell
        return symmetry.verify(kind, w, m, x=x, lam=lam, q=q, cap=cap)

    reports = _ordered_map(run_cell, cells)
    ok = all(r.ok for r in reports)
    header = ("suite", "weights", "m_or_order", "x", "q", "lambda", "sigma", "value", "verdict")
    rows: List[Tuple[object, ...]] = []
    items: List[Dict[str, object]] = []
    for cell, rep in zip(cells, reports):
        w, m, x, lam, q = cell
        jd = rep.to_json_dict()
        items.append(jd)
        for entry in jd["values"]:
            rows.append((
                kind, ",".join(map(str, w)), m, rat_str(x), rat_str(q), rat_str(lam),
                ",".join(map(str, entry["sigma"])), _flat(entry["value"]), rep.verdict,
            ))
    return SuiteResult(
        name=f"verify-{kind}",
        params={
            "kind": kind,
            "weights": [",".join(map(str, w)) for w in weights_list],
            "m_max" if kind != "thm1" else "order": m_max,
            "xs": [rat_str(as_rational(x)) for x in xs],
            "samples": len(points),
            "seed": seed,
        },
        items=tuple(items),
        ok=ok,
        csv_header=header,
        csv_rows=tuple(rows),
    )


def _flat(value) -> str:
    """Collapse a report value (scalar, list, or pair dict) to one CSV cell."""
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        return ";".join(value)
    return ";".join(f"{k}={v}" for k, v in sorted(value.items()))


# -- q-number lemma suites -----------------------------------------------------


def qlemma_suite(which: str, samples: int = 200, seed: int = 0) -> SuiteResult:
    """Exact split checks: 'eq12' scaling [cz] = [c][z]', 'eq16' addition.

    Every instance is admissible by construction: denominators are chosen
    so all exponents of q land in the integers.
    """
    if which not in ("eq12", "eq16"):
        raise ValueError(f"which must be eq12 or eq16, got {which!r}")
    rng = random.Random(seed)
    items: List[Dict[str, object]] = []
    rows: List[Tuple[object, ...]] = []
    ok = True
    for idx in range(samples):
        q = sample_q(rng)
        c0 = rng.randint(1, 3)
        ctx = QContext(q, c=c0)
        if which == "eq12":
            c = rng.randint(1, 4)
            z = Fraction(rng.randint(-9, 9), c * c0)
            lhs, rhs = qcore.qnum_scale_split(z, c, ctx)
            item: Dict[str, object] = {
                "index": idx, "q": rat_str(q), "c0": c0, "c": c, "z": rat_str(z),
                "lhs": rat_str(lhs), "rhs": rat_str(rhs), "equal": lhs == rhs,
            }
            rows.append((which, idx, rat_str(q), c0, f"c={c}", rat_str(z), "",
                         rat_str(lhs), rat_str(rhs), lhs == rhs))
        else:
            a = Fraction(rng.randint(-9, 9), c0)
            b = Fraction(rng.randint(-9, 9), c0)
            lhs, rhs = qcore.qnum_add_split(a, b, ctx)
            item = {
                "index": idx, "q": rat_str(q), "c0": c0, "a": rat_str(a), "b": rat_str(b),
                "lhs": rat_str(lhs), "rhs": rat_str(rhs), "equal": lhs == rhs,
            }
            rows.append((which, idx, rat_str(q), c0, rat_str(a), rat_str(b), "",
                         rat_str(lhs), rat_str(rhs), lhs == rhs))
        ok = ok and lhs == rhs
        items.append(item)
    return SuiteResult(
        name=f"verify-{which}",
        params={"which": which, "samples": samples, "seed": seed},
        items=tuple(items),
        ok=ok,
        csv_header=("suite", "index", "q", "c0", "arg1", "arg2", "arg3", "lhs", "rhs", "equal"),
        csv_rows=tuple(rows),
    )


# -- series suites ---------------------------------------------------------------


def series_factor_suite(order: int = 12, samples: int = 20, seed: int = 0) -> SuiteResult:
    """log(1+lam t)/(lam t) times the plain series must equal the log-form series.

    Checked coefficientwise through t^order at seeded (lam, x); lam is
    sampled nonzero since both representations are singular at lam = 0
    (the lam -> 0 endpoint is covered by the collapse tests instead).
    """
    rng = random.Random(seed)
    items: List[Dict[str, object]] = []
    rows: List[Tuple[object, ...]] = []
    ok = True
    for idx in range(samples):
        lam = sample_rational(rng, allow_zero=False)
        x = sample_rational(rng)
        lhs = series.kim_series(x, lam, order)
        rhs = series.log_factor_series(lam, order) * series.carlitz_series(x, lam, order)
        mismatch = next((k for k in range(order + 1) if lhs[k] != rhs[k]), None)
        equal = mismatch is None
        ok = ok and equal
        items.append({
            "index": idx, "lambda": rat_str(lam), "x": rat_str(x), "order": order,
            "equal": equal, "first_mismatch": mismatch,
        })
        rows.append(("series-factor", idx, rat_str(lam), rat_str(x), order, equal,
                     "" if mismatch is None else mismatch))
    return SuiteResult(
        name="verify-series-factor",
        params={"order": order, "samples": samples, "seed": seed},
        items=tuple(items),
        ok=ok,
        csv_header=("suite", "index", "lambda", "x", "order", "equal", "first_mismatch"),
        csv_rows=tuple(rows),
    )


def stirling_mu1_suite(n_max: int = 8, samples: int = 12, seed: int = 0) -> SuiteResult:
    """Series values against their expansion over signed Stirling numbers.

    For each seeded (lam != 0, x) and n <= n_max the log-form degenerate
    value must equal sum_m S1(n, m) lam^(n-m) B_m(x) with B_m the
    classical polynomial.  stirling1 is looked up on its module at call
    time, so sign-convention mutations propagate into this check.
    """
    rng = random.Random(seed)
    items: List[Dict[str, object]] = []
    rows: List[Tuple[object, ...]] = []
    ok = True
    for idx in range(samples):
        lam = sample_rational(rng, allow_zero=False)
        x = sample_rational(rng)
        for n in range(n_max + 1):
            lhs = series.kim_degenerate(n, x, lam)
            rhs = sum(
                (exactnum.stirling1(n, m) * lam ** (n - m) * bernoulli.classical_poly(m, x)
                 for m in range(n + 1)),
                Fraction(0),
            )
            equal = lhs == rhs
            ok = ok and equal
            items.append({
                "index": idx, "lambda": rat_str(lam), "x": rat_str(x), "n": n,
                "lhs": rat_str(lhs), "rhs": rat_str(rhs), "equal": equal,
            })
            rows.append(("stirling-mu1", idx, rat_str(lam), rat_str(x), n,
                         rat_str(lhs), rat_str(rhs), equal))
    return SuiteResult(
        name="verify-stirling-mu1",
        params={"n_max": n_max, "samples": samples, "seed": seed},
        items=tuple(items),
        ok=ok,
        csv_header=("suite", "index", "lambda", "x", "n", "lhs", "rhs", "equal"),
        csv_rows=tuple(rows),
    )


# -- p-adic oracle reports -------------------------------------------------------


def oracle_report(
    family: str,
    n: int,
    x0: RationalLike = 0,
    q: Optional[RationalLike] = None,
    lam: RationalLike = 0,
    p: int = 5,
    M: int = 12,
    nmax: int = 5,
) -> OracleReport:
    """Riemann sums at levels 1..nmax against the claimed limit.

    family 'carlitz' targets the plain q-polynomial, 'degenerate' the
    Stirling-transformed one, 'mu1' the uniform-measure value (log-form
    series for lam != 0, the classical polynomial at lam = 0, where the
    series representation is singular).  q defaults to 1 + p.
    """
    if family not in ORACLE_FAMILIES:
        raise ValueError(f"family must be one of {ORACLE_FAMILIES}, got {family!r}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    lam = as_rational(lam)
    x0 = as_rational(x0)
    if family == "mu1":
        if q is not None and as_rational(q) != 1:
            raise ValueError("the uniform-measure family is the q -> 1 case; it takes no q")
        qv = Fraction(1)                          # recorded for the report only
        sums = [(N, padic.riemann_sum_mu1(n, x0, lam, p, N)) for N in range(1, nmax + 1)]
        target = (series.kim_degenerate(n, x0, lam) if lam != 0
                  else bernoulli.classical_poly(n, x0))
    else:
        qv = as_rational(q) if q is not None else Fraction(1 + p)
        params = PadicParams(q=qv, lam=lam, p=p, M=M, Nmax=nmax)
        ctx = QContext(qv)
        if family == "carlitz":
            sums = [(N, padic.riemann_sum_carlitz(n, int(x0), params, N)) for N in range(1, nmax + 1)]
            target = bernoulli.carlitz_poly(n, x0, ctx)
        else:
            sums = [(N, padic.riemann_sum_degenerate(n, int(x0), params, N)) for N in range(1, nmax + 1)]
            target = bernoulli.degenerate_qpoly(n, x0, lam, ctx)
    rows, monotone = padic.convergence_report(target, sums, p)
    return OracleReport(
        family=family, p=p, q=qv, lam=lam, n=n, x0=x0,
        target=target, rows=tuple(rows), monotone=monotone,
    )
