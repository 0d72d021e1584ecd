"""Permutation-invariant weighted sums of degenerate q-Bernoulli values.

Positive integer weights w_1..w_n and a permutation sigma split into
W = product of the first n-1 permuted weights and v = the last one.
Three expressions are built on that split: a box-weighted sum of
degenerate polynomial values (thm2_expr), its expansion over Stirling
numbers and a power-sum kernel (thm3_expr), and the generating-series
coefficient list (thm1_coeffs).  Each is invariant under sigma, and the
first two agree identically; verify() certifies both claims by exhaustive
enumeration of the symmetric group, reporting exact per-sigma values.

The kind tokens thm1/thm2/thm3/eq20 are the CLI vocabulary: the three
expression families and the closed-form-vs-expansion cross check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .bernoulli import carlitz_poly_values, degenerate_qpoly
from .exactnum import RationalLike, as_rational, binom, rat_str, stirling1
from .qcore import QContext, qnum

__all__ = [
    "CapExceeded",
    "WeightVector",
    "SigmaView",
    "SymmetryReport",
    "kernel_K",
    "thm2_expr",
    "thm3_expr",
    "thm1_coeffs",
    "verify",
    "DEFAULT_PERMUTATION_CAP",
]

DEFAULT_PERMUTATION_CAP = 6           # n! enumeration stays trivial up to here

VERIFY_KINDS = ("thm1", "thm2", "thm3", "eq20")


class CapExceeded(ValueError):
    """Refused to enumerate a symmetric group larger than the cap allows."""


@dataclass(frozen=True)
class WeightVector:
    """Positive integer weights; repeats are allowed and must be harmless."""

    w: Tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if not w:
            raise ValueError("need at least one weight")
        if any(x < 1 for x in w):
            raise ValueError(f"weights must be positive integers, got {w}")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    def views(self) -> Iterator["SigmaView"]:
        """All n! views, in lexicographic one-line order."""
        for sigma in itertools.permutations(range(1, self.n + 1)):
            yield SigmaView(self, sigma)


@dataclass(frozen=True)
class SigmaView:
    """One permutation's (W, v, P) split of a weight vector.

    sigma is one-line notation on {1..n}.  W multiplies the first n-1
    permuted weights (empty product 1 when n = 1), v is the last permuted
    weight, and P_j = W / w_{sigma(j)} for j < n.
    """

    base: WeightVector
    sigma: Tuple[int, ...]
    permuted: Tuple[int, ...] = field(init=False)
    W: int = field(init=False)
    v: int = field(init=False)
    P: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        n = self.base.n
        if sorted(sigma) != list(range(1, n + 1)):
            raise ValueError(f"{sigma} is not one-line notation for a permutation of 1..{n}")
        permuted = tuple(self.base.w[s - 1] for s in sigma)
        W = prod(permuted[:-1])
        v = permuted[-1]
        P = tuple(W // u for u in permuted[:-1])
        # derived-field validation: W*v is sigma-independent, P_j complements u_j
        if W * v != prod(self.base.w):
            raise AssertionError("W*v must equal the full weight product")
        if any(P[j] * permuted[j] != W for j in range(n - 1)):
            raise AssertionError("each P_j must complement its weight inside W")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "permuted", permuted)
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "P", P)

    @property
    def head(self) -> Tuple[int, ...]:
        """The first n-1 permuted weights: the ranges of the k-sum box."""
        return self.permuted[:-1]


def kernel_K(
    u: Sequence[int],
    i: int,
    t: int,
    q: RationalLike,
    b: int = 1,
) -> Fraction:
    """Nested power sum over the lattice box prod_l [0, u_l).

    Each point k contributes q^{b(t+1)S} * [S]_{q^b}^i with
    S = sum_j (prod_{l != j} u_l) k_j.  The empty box (no u at all) has
    the single point k = (), so the value is 1 when i = 0 and 0 otherwise
    (0^0 = 1 throughout).
    """
    q = as_rational(q)
    if q in (0, 1, -1):
        raise ValueError(f"base q must avoid 0 and the roots of unity +-1, got {q}")
    if i < 0 or t < 0:
        raise ValueError("i and t must be nonnegative")
    b = int(b)
    if b < 1:
        raise ValueError(f"base exponent must be a positive integer, got {b}")
    u = tuple(int(x) for x in u)
    if any(x < 1 for x in u):
        raise ValueError(f"box weights must be positive integers, got {u}")
    U = prod(u)
    P = tuple(U // x for x in u)
    qb = q**b
    one_minus_qb = 1 - qb
    total = Fraction(0)
    for k in itertools.product(*(range(x) for x in u)):
        S = sum(Pj * kj for Pj, kj in zip(P, k))
        A = qb**S                                # q^{bS}, shared by both factors
        bracket = (1 - A) / one_minus_qb
        total += A ** (t + 1) * bracket**i
    return total


def thm2_expr(
    view: SigmaView,
    m: int,
    x: RationalLike,
    lam: RationalLike,
    q: RationalLike,
) -> Fraction:
    """Box-weighted sum of degenerate polynomial values for one view.

    [W]_q^(m-1) * sum over the box of q^{v * sum_j P_j k_j} times the
    degree-m degenerate polynomial with deformation lam/[W]_q at base
    q^W, evaluated at v*x + sum_j (v/u_j) k_j.  Exact; m = 0 uses the
    rational inverse of [W]_q.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    q = as_rational(q)
    x = as_rational(x)
    lam = as_rational(lam)
    ctx_w = QContext(q, c=view.W)
    Wq = qnum(view.W, QContext(q))
    lam_scaled = lam / Wq
    qv = q**view.v
    total = Fraction(0)
    for k in itertools.product(*(range(u) for u in view.head)):
        S = sum(Pj * kj for Pj, kj in zip(view.P, k))
        y = view.v * x + sum(Fraction(view.v * kj, uj) for uj, kj in zip(view.head, k))
        total += qv**S * degenerate_qpoly(m, y, lam_scaled, ctx_w)
    return Wq ** (m - 1) * total


def thm3_expr(
    view: SigmaView,
    m: int,
    x: RationalLike,
    lam: RationalLike,
    q: RationalLike,
) -> Fraction:
    """Stirling-and-kernel expansion of thm2_expr; identically equal to it.

    sum over p <= m, s <= p of binom(p,s) S1(m,p) lam^(m-p) [W]_q^(s-1)
    [v]_q^(p-s) beta_{s,q^W}(v x) K(u | p-s, s) with the kernel at base
    exponent v.  Kept as a genuinely different evaluation route: it runs
    through kernel_K so the cross check has teeth.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    q = as_rational(q)
    x = as_rational(x)
    lam = as_rational(lam)
    ctx_w = QContext(q, c=view.W)
    base = QContext(q)
    Wq = qnum(view.W, base)
    vq = qnum(view.v, base)
    beta = carlitz_poly_values(m, view.v * x, ctx_w)
    total = Fraction(0)
    for p in range(m + 1):
        s1 = stirling1(m, p)
        if s1 == 0:
            continue
        if lam == 0 and p != m:
            continue                              # lam^(m-p) kills every other term
        lam_pow = lam ** (m - p)
        for s in range(p + 1):
            kern = kernel_K(view.head, p - s, s, q, view.v)
            total += binom(p, s) * s1 * lam_pow * Wq ** (s - 1) * vq ** (p - s) * beta[s] * kern
    return total


def thm1_coeffs(
    view: SigmaView,
    order: int,
    x: RationalLike,
    lam: RationalLike,
    q: RationalLike,
) -> List[Fraction]:
    """Generating-series coefficients through t^order: thm2_expr(m)/m!."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return [thm2_expr(view, m, x, lam, q) / factorial(m) for m in range(order + 1)]


ReportValue = Union[Fraction, List[Fraction], Tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class SymmetryReport:
    """Per-sigma values plus an exact-equality verdict for one identity."""

    kind: str
    weights: Tuple[int, ...]
    params: Dict[str, str]
    values: Tuple[Tuple[Tuple[int, ...], ReportValue], ...]
    verdict: str                      # "pass" | "fail"
    counterexample: Optional[Dict[str, object]]

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weights": list(self.weights),
            "params": dict(self.params),
            "values": [
                {"sigma": list(sigma), "value": _value_json(val)}
                for sigma, val in self.values
            ],
            "verdict": self.verdict,
            "counterexample": self.counterexample,
        }


def _value_json(val: ReportValue):
    if isinstance(val, Fraction):
        return rat_str(val)
    if isinstance(val, tuple):
        return {"thm2": rat_str(val[0]), "thm3": rat_str(val[1])}
    return [rat_str(c) for c in val]


def verify(
    kind: str,
    weights: Union[WeightVector, Sequence[int]],
    m: int,
    x: RationalLike = 0,
    lam: RationalLike = 0,
    q: RationalLike = Fraction(2),
    sigmas: Optional[Sequence[Sequence[int]]] = None,
    cap: int = DEFAULT_PERMUTATION_CAP,
) -> SymmetryReport:
    """Evaluate one identity for every permutation and compare exactly.

    kind thm2/thm3 require one common value over the whole group, thm1
    the same for the coefficient list through order m, and eq20 pins the
    closed form against the kernel expansion permutation by permutation
    (on top of the invariance of the closed form).  sigmas=None sweeps
    all of S_n in lexicographic order; an explicit list restricts the
    sweep.  The expression evaluators are looked up as module globals at
    call time, so a test can swap in a corrupted variant and watch the
    verdict flip.
    """
    if kind not in VERIFY_KINDS:
        raise ValueError(f"kind must be one of {VERIFY_KINDS}, got {kind!r}")
    wv = weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))
    if sigmas is None:
        if wv.n > cap:
            raise CapExceeded(f"n = {wv.n} weights would need {wv.n}! permutations; cap is {cap}")
        sigma_list = list(itertools.permutations(range(1, wv.n + 1)))
    else:
        sigma_list = [tuple(int(s) for s in sig) for sig in sigmas]
        if not sigma_list:
            raise ValueError("need at least one permutation")

    q = as_rational(q)
    x = as_rational(x)
    lam = as_rational(lam)
    params = {
        "order" if kind == "thm1" else "m": str(m),
        "x": rat_str(x),
        "lambda": rat_str(lam),
        "q": rat_str(q),
    }

    values: List[Tuple[Tuple[int, ...], ReportValue]] = []
    for sigma in sigma_list:
        view = SigmaView(wv, sigma)
        if kind == "thm1":
            val: ReportValue = thm1_coeffs(view, m, x, lam, q)
        elif kind == "thm2":
            val = thm2_expr(view, m, x, lam, q)
        elif kind == "thm3":
            val = thm3_expr(view, m, x, lam, q)
        else:
            val = (thm2_expr(view, m, x, lam, q), thm3_expr(view, m, x, lam, q))
        values.append((sigma, val))

    counterexample = _find_counterexample(kind, values)
    return SymmetryReport(
        kind=kind,
        weights=wv.w,
        params=params,
        values=tuple(values),
        verdict="pass" if counterexample is None else "fail",
        counterexample=counterexample,
    )


def _find_counterexample(kind, values) -> Optional[Dict[str, object]]:
    if kind == "eq20":
        for sigma, (lhs, rhs) in values:
            if lhs != rhs:
                return {
                    "sigma": list(sigma),
                    "thm2": rat_str(lhs),
                    "thm3": rat_str(rhs),
                    "reason": "closed form and kernel expansion disagree",
                }
        reference = values[0][1][0]
        for sigma, (lhs, _) in values[1:]:
            if lhs != reference:
                return {
                    "sigma": list(sigma),
                    "value": rat_str(lhs),
                    "expected": rat_str(reference),
                    "reference_sigma": list(values[0][0]),
                    "reason": "value changed under permutation",
                }
        return None
    reference = values[0][1]
    for sigma, val in values[1:]:
        if val != reference:
            return {
                "sigma": list(sigma),
                "value": _value_json(val),
                "expected": _value_json(reference),
                "reference_sigma": list(values[0][0]),
                "reason": "value changed under permutation",
            }
    return None
