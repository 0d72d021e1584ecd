"""Carlitz q-Bernoulli numbers/polynomials and their degenerate extension.

The q-Bernoulli numbers b_n at base Q solve

    b_0 = 1,   Q * sum_l C(n,l) Q^l b_l  -  b_n  =  [n == 1]   (n >= 1),

which pins b_n = ([n==1] - Q * sum_{l<n} C(n,l) Q^l b_l) / (Q^{n+1} - 1);
the divisor is nonzero because QContext excludes q in {0, 1, -1}.  The
polynomials are

    b_n(y) = sum_l C(n,l) Q^{l*y} b_l [y]_Q^{n-l},        Q = q^c,

and the fully degenerate version is their Stirling transform

    b_{n,L}(y) = sum_l stirling1(n,l) L^{n-l} b_l(y),

which at L = 0 collapses to b_n(y) (0**0 == 1).  Number tables are
memoized per (q, c) because symmetry verification reuses the same bases
thousands of times.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .exactnum import RatFuncQ, RationalLike, as_rational, binom, stirling1
from .qcore import InadmissibleArg, QContext, qnum

__all__ = [
    "CarlitzTable",
    "ClassicalTable",
    "carlitz_numbers",
    "carlitz_poly",
    "carlitz_poly_values",
    "degenerate_qpoly",
    "classical_numbers",
    "classical_poly",
    "carlitz_numbers_ratfunc",
]


@dataclass(frozen=True)
class CarlitzTable:
    """q-Bernoulli numbers values[i] = b_i at base q^c."""

    ctx: QContext
    values: Tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ClassicalTable:
    """Classical Bernoulli numbers values[i] = B_i (B_1 = -1/2)."""

    values: Tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


_carlitz_cache: Dict[Tuple[Fraction, int], List[Fraction]] = {}
_cache_lock = threading.Lock()


def _carlitz_values(nmax: int, ctx: QContext) -> List[Fraction]:
    key = (ctx.q, ctx.c)
    with _cache_lock:
        table = _carlitz_cache.setdefault(key, [Fraction(1)])
        if len(table) <= nmax:
            Q = ctx.q ** ctx.c
            qpow = [Q ** l for l in range(nmax + 2)]
            for n in range(len(table), nmax + 1):
                acc = Fraction(0)
                for l in range(n):
                    acc += binom(n, l) * qpow[l] * table[l]
                delta = 1 if n == 1 else 0
                table.append((delta - Q * acc) / (qpow[n + 1] - 1))
        return table[: nmax + 1]


def carlitz_numbers(nmax: int, ctx: QContext) -> CarlitzTable:
    """Table of q-Bernoulli numbers b_0..b_nmax at base q^c."""
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    return CarlitzTable(ctx, tuple(_carlitz_values(nmax, ctx)))


def carlitz_poly_values(nmax: int, y: RationalLike, ctx: QContext) -> List[Fraction]:
    """[b_0(y), ..., b_nmax(y)] at base q^c, sharing one power table."""
    y = as_rational(y)
    e = y * ctx.c
    if e.denominator != 1:
        raise InadmissibleArg(f"argument {y} is not admissible at base exponent {ctx.c}")
    betas = _carlitz_values(nmax, ctx)
    qy = ctx.q ** e.numerator          # Q^y with Q = q^c
    bracket = qnum(y, ctx)
    qy_pow = [Fraction(1)]
    br_pow = [Fraction(1)]
    for _ in range(nmax):
        qy_pow.append(qy_pow[-1] * qy)
        br_pow.append(br_pow[-1] * bracket)
    out = []
    for n in range(nmax + 1):
        acc = Fraction(0)
        for l in range(n + 1):
            acc += binom(n, l) * qy_pow[l] * betas[l] * br_pow[n - l]
        out.append(acc)
    return out


def carlitz_poly(n: int, y: RationalLike, ctx: QContext) -> Fraction:
    """q-Bernoulli polynomial b_n(y) at base q^c; b_n(0) = b_n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return carlitz_poly_values(n, y, ctx)[n]


def degenerate_qpoly(m: int, y: RationalLike, lam_deg: RationalLike, ctx: QContext) -> Fraction:
    """Fully degenerate q-Bernoulli polynomial: Stirling transform of b_l(y).

    ``lam_deg`` is the (already scaled) deformation parameter; 0 is allowed
    and reproduces the plain q-Bernoulli polynomial.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    lam_deg = as_rational(lam_deg)
    vals = carlitz_poly_values(m, y, ctx)
    acc = Fraction(0)
    for l in range(m + 1):
        s = stirling1(m, l)
        if s:
            acc += s * lam_deg ** (m - l) * vals[l]
    return acc


_classical_cache: List[Fraction] = [Fraction(1)]
_classical_lock = threading.Lock()


def classical_numbers(nmax: int) -> ClassicalTable:
    """Bernoulli numbers B_0..B_nmax from sum_{k<n} C(n,k) B_k = 0 (n >= 2)."""
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    with _classical_lock:
        while len(_classical_cache) <= nmax:
            n = len(_classical_cache) + 1          # recurrence index
            acc = Fraction(0)
            for k in range(n - 1):
                acc += binom(n, k) * _classical_cache[k]
            _classical_cache.append(-acc / n)
        values = tuple(_classical_cache[: nmax + 1])
    return ClassicalTable(values)


def classical_poly(m: int, x: RationalLike) -> Fraction:
    """Bernoulli polynomial B_m(x) = sum_k C(m,k) B_k x^{m-k}."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    x = as_rational(x)
    table = classical_numbers(m)
    acc = Fraction(0)
    xp = Fraction(1)
    for k in range(m, -1, -1):                     # x^{m-k} built low to high
        acc += binom(m, k) * table[k] * xp
        xp *= x
    return acc


def carlitz_numbers_ratfunc(nmax: int) -> List[RatFuncQ]:
    """b_n as normalized rational functions of q (base exponent 1).

    Runs the defining recurrence over polynomial numerators against the
    known denominator chain prod_{j=2}^{n+1} (q^j - 1), so no gcd work is
    needed until the final normalization.  Enables exact q -> 1 limits.
    """
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")

    def shift(p: List[int], k: int) -> List[int]:
        return [0] * k + p

    def padd(a: List[int], b: List[int]) -> List[int]:
        n = max(len(a), len(b))
        return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]

    def pmul(a: List[int], b: List[int]) -> List[int]:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out

    def qj_minus_1(j: int) -> List[int]:
        return [-1] + [0] * (j - 1) + [1]

    nums: List[List[int]] = [[1]]                  # numerator of b_n
    dens: List[List[int]] = [[1]]                  # prod_{j=2}^{n+1} (q^j - 1)
    for n in range(1, nmax + 1):
        acc: List[int] = [0]
        for l in range(n):
            # binom(n,l) * q^{l+1} * num_l * (den_{n-1} / den_l)
            term = pmul([binom(n, l).numerator], shift(list(nums[l]), l + 1))
            for j in range(l + 2, n + 1):
                term = pmul(term, qj_minus_1(j))
            acc = padd(acc, term)
        num = [-c for c in acc]
        if n == 1:
            num = padd(dens[0], num)
        nums.append(num)
        dens.append(pmul(dens[n - 1], qj_minus_1(n + 1)))
    return [RatFuncQ(nums[n], dens[n]) for n in range(nmax + 1)]
