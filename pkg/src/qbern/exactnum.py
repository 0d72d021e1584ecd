"""Exact rational scalars and the combinatorial quantities built on them.

Everything in this package computes with arbitrary-precision rationals
(`fractions.Fraction`); there is no floating point anywhere.  This module
supplies the shared scalar toolbox:

* generalized binomial coefficients ``binom(e, k)`` for rational ``e``,
* signed Stirling numbers of the first kind ``stirling1(n, m)``,
* falling factorials ``falling(z, n)``,
* ``RatFuncQ``, a normalized univariate rational function over the
  rationals, used to take exact limits such as ``q -> 1``.

Stirling numbers use the signed convention fixed by

    falling(z, n) == sum(stirling1(n, m) * z**m for m in 0..n)

and the empty product / ``0**0 == 1`` conventions hold throughout.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Sequence, Tuple, Union

__all__ = [
    "Rational",
    "RationalLike",
    "PoleError",
    "as_rational",
    "rat_str",
    "binom",
    "stirling1",
    "falling",
    "RatFuncQ",
    "ratfunc_limit",
]

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a genuine pole."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, or "num/den" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats carry binary rounding; exactness is the whole point here
        raise TypeError("floats are not accepted; pass a Fraction or 'num/den' string")
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    """Serialize a rational as "num/den" (denominator always present)."""
    v = as_rational(value)
    return f"{v.numerator}/{v.denominator}"


def binom(e: RationalLike, k: int) -> Fraction:
    """Generalized binomial coefficient e(e-1)...(e-k+1) / k!.

    ``e`` may be any rational; for integer e >= 0 this is the ordinary
    binomial coefficient.  ``binom(e, 0) == 1`` (empty product).
    """
    if k < 0:
        raise ValueError(f"binom needs k >= 0, got {k}")
    e = as_rational(e)
    num = Fraction(1)
    for i in range(k):
        num *= e - i
    return num / factorial(k)


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> Tuple[int, ...]:
    # Row n of the signed triangle: S1(n+1, m) = S1(n, m-1) - n*S1(n, m).
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1)
    row = []
    for m in range(n + 1):
        left = prev[m - 1] if 1 <= m <= n else 0
        right = prev[m] if m <= n - 1 else 0
        row.append(left - (n - 1) * right)
    return tuple(row)


def stirling1(n: int, m: int) -> int:
    """Signed Stirling number of the first kind; 0 outside 0 <= m <= n."""
    if n < 0:
        raise ValueError("stirling1 needs n >= 0")
    if m < 0 or m > n:
        return 0
    return _stirling1_row(n)[m]


def falling(z: RationalLike, n: int) -> Fraction:
    """Falling factorial z(z-1)...(z-n+1); empty product is 1."""
    if n < 0:
        raise ValueError(f"falling needs n >= 0, got {n}")
    z = as_rational(z)
    out = Fraction(1)
    for i in range(n):
        out *= z - i
    return out


# --------------------------------------------------------------------------
# Dense polynomial helpers (coefficient lists, low degree first).

Poly = Tuple[Fraction, ...]


def _ptrim(c: Sequence[Fraction]) -> Poly:
    i = len(c)
    while i > 1 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pzero(p: Poly) -> bool:
    return len(p) == 1 and p[0] == 0


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _ptrim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ])


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if _pzero(a) or _pzero(b):
        return (Fraction(0),)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _ptrim(out)


def _pdivmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    # Exact long division over the rationals.
    if _pzero(b):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) - 1 < db:
        return (Fraction(0),), _ptrim(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        coef = rem[i] / lead
        if coef != 0:
            quo[i - db] = coef
            for j, bj in enumerate(b):
                rem[i - db + j] -= coef * bj
    return _ptrim(quo), _ptrim(rem)


def _peval(a: Poly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def _pint_primitive(a: Sequence[int]) -> Tuple[int, ...]:
    # Primitive part of an integer polynomial, positive leading coefficient.
    g = 0
    for c in a:
        g = gcd(g, abs(c))
    if g == 0:
        return (0,)
    sign = -1 if a[-1] < 0 else 1
    return tuple(c * sign // g for c in a)


def _pint_pseudo_rem(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    # prem(a, b) for integer polynomials, deg a >= deg b >= 0.
    db = len(b) - 1
    lb = b[-1]
    rem = list(a)
    while len(rem) - 1 >= db and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        coef = rem[-1]
        rem = [lb * c for c in rem]
        shift = len(rem) - 1 - db
        for j, bj in enumerate(b):
            rem[shift + j] -= coef * bj
        rem.pop()
        while len(rem) > 1 and rem[-1] == 0:
            rem.pop()
    return tuple(rem) if rem else (0,)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals via a primitive Euclidean sequence."""
    if _pzero(a) and _pzero(b):
        return (Fraction(1),)

    def to_int(p: Poly) -> Tuple[int, ...]:
        lcm = 1
        for c in p:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        return tuple(int(c * lcm) for c in p)

    x = _pint_primitive(to_int(a)) if not _pzero(a) else (0,)
    y = _pint_primitive(to_int(b)) if not _pzero(b) else (0,)
    if x == (0,):
        x, y = y, (0,)
    while y != (0,):
        if len(x) < len(y):
            x, y = y, x
            continue
        r = _pint_pseudo_rem(x, y)
        x, y = y, _pint_primitive(r)
    lead = Fraction(x[-1])
    return tuple(Fraction(c) / lead for c in x)


class RatFuncQ:
    """A rational function of one variable q, kept in normalized form.

    Normalization divides out the polynomial gcd of numerator and
    denominator and makes the denominator monic, so removable
    singularities are cancelled by construction and ``limit`` at a point
    is just evaluation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        n = _ptrim([as_rational(c) for c in num]) if num else (Fraction(0),)
        d = _ptrim([as_rational(c) for c in den]) if den else (Fraction(1),)
        if _pzero(d):
            raise ZeroDivisionError("RatFuncQ with zero denominator")
        if _pzero(n):
            n, d = (Fraction(0),), (Fraction(1),)
        else:
            g = _pgcd(n, d)
            if len(g) > 1:
                n, _ = _pdivmod(n, g)
                d, _ = _pdivmod(d, g)
            lead = d[-1]
            if lead != 1:
                n = tuple(c / lead for c in n)
                d = tuple(c / lead for c in d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFuncQ is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> "RatFuncQ":
        return cls([as_rational(c)])

    @classmethod
    def var(cls) -> "RatFuncQ":
        """The identity function q."""
        return cls([0, 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFuncQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RatFuncQ") -> "RatFuncQ":
        return RatFuncQ(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other: "RatFuncQ") -> "RatFuncQ":
        return self + (-other)

    def __neg__(self) -> "RatFuncQ":
        return RatFuncQ(_pneg(self.num), self.den)

    def __mul__(self, other: "RatFuncQ") -> "RatFuncQ":
        return RatFuncQ(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "RatFuncQ") -> "RatFuncQ":
        if _pzero(other.num):
            raise ZeroDivisionError("division by the zero rational function")
        return RatFuncQ(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __pow__(self, k: int) -> "RatFuncQ":
        if k < 0:
            return RatFuncQ(self.den, self.num) ** (-k)
        out = RatFuncQ([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return _pzero(self.num)

    def eval(self, q0: RationalLike) -> Fraction:
        q0 = as_rational(q0)
        d = _peval(self.den, q0)
        if d == 0:
            raise PoleError(f"pole at q = {q0}")
        return _peval(self.num, q0) / d

    def __call__(self, q0: RationalLike) -> Fraction:
        return self.eval(q0)

    def __repr__(self) -> str:
        return f"RatFuncQ(num={list(self.num)}, den={list(self.den)})"


def ratfunc_limit(f: RatFuncQ, q0: RationalLike) -> Fraction:
    """Exact limit of ``f`` at ``q0``.

    Removable singularities were already cancelled when ``f`` was
    normalized, so the limit is plain evaluation; a vanishing denominator
    here is a genuine pole and raises :class:`PoleError`.
    """
    return f.eval(q0)
