"""Independent p-adic oracle: valuations and exact Riemann-level sums.

The weighted averages computed here converge p-adically (as the level N
grows) to polynomial values that the rest of the package obtains by
entirely different routes: recurrence tables, Stirling transforms,
generating series.  Convergence is certified by watching the valuation
of (sum at level N) - (claimed limit) climb strictly.

Everything stays in exact rational arithmetic until the final valuation
is read off; no modular inverses of quantities with positive valuation
are ever needed, which keeps the bookkeeping auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from .exactnum import RationalLike, as_rational, binom

__all__ = [
    "INF",
    "Valuation",
    "PadicValue",
    "PadicParams",
    "vp",
    "riemann_sum_carlitz",
    "riemann_sum_degenerate",
    "riemann_sum_mu1",
    "convergence_report",
]

INF = math.inf
Valuation = Union[int, float]          # an integer, or the INF sentinel for 0


def _check_odd_prime(p: int) -> int:
    p = int(p)
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be an odd prime, got {p}")
        d += 2
    return p


def vp(r: RationalLike, p: int) -> Valuation:
    """p-adic valuation of a rational; the zero rational maps to INF."""
    p = _check_odd_prime(p)
    r = as_rational(r)
    if r == 0:
        return INF
    v = 0
    num = abs(r.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = r.denominator                 # reduced, so at most one side carries p
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PadicValue:
    """A rational seen p-adically: p^valuation * unit, unit taken mod p^M."""

    p: int
    valuation: Valuation
    unit: Optional[int]
    M: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.M < 1:
            raise ValueError(f"precision M must be >= 1, got {self.M}")
        if self.valuation == INF:
            if self.unit is not None:
                raise ValueError("the zero value carries no unit")
        else:
            if not isinstance(self.valuation, int):
                raise ValueError(f"finite valuation must be an integer, got {self.valuation!r}")
            if self.unit is None or not 0 < self.unit < self.p**self.M or self.unit % self.p == 0:
                raise ValueError("unit must be a residue mod p^M coprime to p")

    @classmethod
    def from_rational(cls, r: RationalLike, p: int, M: int = 12) -> "PadicValue":
        r = as_rational(r)
        p = _check_odd_prime(p)
        if r == 0:
            return cls(p, INF, None, M)
        v = vp(r, p)
        num, den = r.numerator, r.denominator
        if v >= 0:
            num //= p**v
        else:
            den //= p**(-v)
        mod = p**M
        unit = num * pow(den, -1, mod) % mod
        return cls(p, v, unit, M)

    def __repr__(self) -> str:
        if self.valuation == INF:
            return f"PadicValue(0; p={self.p}, M={self.M})"
        return f"PadicValue({self.p}^{self.valuation} * {self.unit} mod {self.p}^{self.M})"


@dataclass(frozen=True)
class PadicParams:
    """Standing hypotheses: odd p, q within distance 1/p of 1, integral lam."""

    q: Fraction
    lam: Fraction = Fraction(0)
    p: int = 5
    M: int = 12
    Nmax: int = 5

    def __post_init__(self):
        p = _check_odd_prime(self.p)
        q = as_rational(self.q)
        lam = as_rational(self.lam)
        if self.M < 1:
            raise ValueError(f"precision M must be >= 1, got {self.M}")
        if self.Nmax < 1:
            raise ValueError(f"Nmax must be >= 1, got {self.Nmax}")
        if q == 1:
            raise ValueError("q = 1 degenerates every bracket")
        if vp(1 - q, p) < 1:
            raise ValueError(f"need v_p(1-q) >= 1; q = {q} sits too far from 1")
        if vp(lam, p) < 0:
            raise ValueError(f"lam = {lam} is not p-adically integral")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "lam", lam)


@lru_cache(maxsize=None)
def _geometric_sum(q: Fraction, r: int, count: int) -> Fraction:
    """sum_{y<count} q^{r*y}, exact in closed form."""
    if r == 0:
        return Fraction(count)
    qr = q**r
    if qr == 1:
        return Fraction(count)
    return (qr**count - 1) / (qr - 1)


@lru_cache(maxsize=None)
def _bracket_moment(m: int, x0: int, q: Fraction, count: int) -> Fraction:
    """sum_{y<count} [x0+y]_q^m q^y.

    Expands the bracket power binomially so each term is a geometric sum;
    the count-term loop never runs, which is what makes level 5 at p = 7
    affordable.
    """
    total = Fraction(0)
    for j in range(m + 1):
        g = _geometric_sum(q, j + 1, count)
        total += binom(m, j) * (-1) ** j * q ** (j * x0) * g
    return total / (1 - q) ** m


def _check_level(params: PadicParams, N: int) -> int:
    N = int(N)
    if not 1 <= N <= params.Nmax:
        raise ValueError(f"level N must lie in 1..{params.Nmax}, got {N}")
    return N


def _check_x0(x0) -> int:
    x0 = as_rational(x0)
    if x0.denominator != 1 or x0 < 0:
        raise ValueError(f"x0 must be a nonnegative integer, got {x0}")
    return int(x0)


def riemann_sum_carlitz(n: int, x0: int, params: PadicParams, N: int) -> Fraction:
    """(1/[p^N]_q) sum_{y<p^N} [x0+y]_q^n q^y as an exact rational."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x0 = _check_x0(x0)
    N = _check_level(params, N)
    count = params.p**N
    return _bracket_moment(n, x0, params.q, count) / _geometric_sum(params.q, 1, count)


def riemann_sum_degenerate(n: int, x0: int, params: PadicParams, N: int) -> Fraction:
    """Same weighted average with integrand prod_{i<n}([x0+y]_q - i*lam).

    The product is expanded in powers of the bracket by direct polynomial
    multiplication, deliberately not through any precomputed coefficient
    table, so this oracle cannot inherit a bug from the transform it is
    checking.  lam = 0 collapses to the plain bracket power.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x0 = _check_x0(x0)
    N = _check_level(params, N)
    coeffs = [Fraction(1)]
    for i in range(n):
        shift = -i * params.lam
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, ck in enumerate(coeffs):
            nxt[k + 1] += ck
            nxt[k] += shift * ck
        coeffs = nxt
    count = params.p**N
    total = Fraction(0)
    for deg, ck in enumerate(coeffs):
        if ck != 0:
            total += ck * _bracket_moment(deg, x0, params.q, count)
    return total / _geometric_sum(params.q, 1, count)


def riemann_sum_mu1(n: int, x0: RationalLike, lam: RationalLike, p: int, N: int) -> Fraction:
    """(1/p^N) sum_{y<p^N} prod_{i<n}(x0 + y - i*lam), exact.

    Plain uniform averages, evaluated by a direct loop (integer fast path
    when x0 and lam are integers); shares nothing with the series code it
    cross-checks.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    p = _check_odd_prime(p)
    if N < 1:
        raise ValueError(f"level N must be >= 1, got {N}")
    x0 = as_rational(x0)
    lam = as_rational(lam)
    if vp(x0, p) < 0 or vp(lam, p) < 0:
        raise ValueError("x0 and lam must be p-adically integral")
    count = p**N
    if x0.denominator == 1 and lam.denominator == 1:
        a, l = int(x0), int(lam)
        total = 0
        for y in range(count):
            prod = 1
            for i in range(n):
                prod *= a + y - i * l
            total += prod
        return Fraction(total, count)
    total_f = Fraction(0)
    for y in range(count):
        prod_f = Fraction(1)
        for i in range(n):
            prod_f *= x0 + y - i * lam
        total_f += prod_f
    return total_f / count


def convergence_report(
    target: RationalLike,
    sums: Sequence[Tuple[int, RationalLike]],
    p: int,
) -> Tuple[List[Tuple[int, Valuation]], bool]:
    """Rows (N, v_p(S_N - target)) plus a valuation-growth verdict.

    The verdict certifies convergence to the target, not a rate.  An INF
    row is an exact hit at that level and is skipped (low levels do land
    on the limit by arithmetic accident).  The finite valuations must
    never decrease, must grow over the range as a whole, and must grow
    strictly at the final step; a wrong target makes the tail stabilize
    at v_p(limit - target), which the last condition catches, while a
    merely bounded sequence fails the net-growth condition.  Low-level
    plateaus (two equal valuations before growth resumes) are accepted:
    they occur in the true sequences and carry no divergence signal.
    """
    target = as_rational(target)
    rows = [(int(N), vp(as_rational(s) - target, p)) for N, s in sums]
    return rows, _growth_verdict([val for _, val in rows])


def _growth_verdict(vals: Sequence[Valuation]) -> bool:
    finite = [v for v in vals if v != INF]
    if len(finite) < 2:
        return True                    # all (or all but one) exact hits
    if any(b < a for a, b in zip(finite, finite[1:])):
        return False
    return finite[-1] > finite[-2] and finite[-1] > finite[0]
