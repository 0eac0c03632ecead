"""Exact arithmetic: arbitrary-precision rationals and real quadratic irrationals.

Rationals are plain :class:`fractions.Fraction` values (always reduced,
positive denominator).  :class:`QuadraticNumber` represents ``a + b*sqrt(d)``
exactly.  Every sign and comparison is decided by sign-tracked squarings of
rationals, never by floating point: interval-membership tests downstream
branch on these comparisons, and a wrong branch silently corrupts entire
reports.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import DomainError

Rational = Fraction

RationalLike = Union[Fraction, int]

TRIAL_DIVISION_BOUND = 10_000


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def squarefree_decompose(n: int, bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, int]:
    """Write ``n = s*s * d`` with ``d`` squarefree up to trial division.

    Primes up to ``bound`` are divided out; the leftover cofactor is tested
    for being a perfect square so radicands built from large squares still
    collapse.  A composite leftover with a hidden square factor stays
    unreduced.  That only affects how canonical the representation is;
    comparisons stay exact either way because they never assume the
    radicand is squarefree.
    """
    if n < 0:
        raise DomainError("negative radicand")
    if n in (0, 1):
        return 1, n
    s, d = 1, 1
    p = 2
    while p <= bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            d *= n
    return s, d


def _sign_one_radical(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of ``a + b*sqrt(d)`` with ``d >= 0``."""
    if b == 0 or d == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    sa, sb = _sign(a), _sign(b)
    if sa == sb:
        return sa
    t = a * a - b * b * d
    if t == 0:
        return 0
    return sa if t > 0 else sb


def _sign_two_radicals(a: Fraction, b: Fraction, m: int, c: Fraction, n: int) -> int:
    """Exact sign of ``a + b*sqrt(m) + c*sqrt(n)``.

    At most two sign-tracked squarings.  Correct for arbitrary nonnegative
    ``m``, ``n``; neither squarefreeness nor independence of the two
    radicals is assumed.
    """
    s = _sign_one_radical_pair(b, m, c, n)
    if a == 0:
        return s
    sa = _sign(a)
    if s == 0 or s == sa:
        return sa
    # opposite signs: compare a^2 with (b*sqrt(m) + c*sqrt(n))^2
    t = a * a - b * b * m - c * c * n
    u = 2 * b * c
    su = _sign_one_radical(t, -u, m * n)
    if su > 0:
        return sa
    if su < 0:
        return s
    return 0


def _sign_one_radical_pair(b: Fraction, m: int, c: Fraction, n: int) -> int:
    """Exact sign of ``b*sqrt(m) + c*sqrt(n)``."""
    if b == 0 or m == 0:
        return _sign(c) if n else 0
    if c == 0 or n == 0:
        return _sign(b)
    sb, sc = _sign(b), _sign(c)
    if sb == sc:
        return sb
    t = b * b * m - c * c * n
    if t == 0:
        return 0
    return sb if t > 0 else sc


_PARSE_RE = re.compile(
    r"^\(\s*(-?\d+(?:/\d+)?)\s*\+\s*(-?\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)$"
)


@total_ordering
class QuadraticNumber:
    """Exact value ``a + b*sqrt(d)`` with rational ``a``, ``b``, integer ``d >= 0``.

    Square factors of ``d`` are folded into ``b`` on construction, and
    ``d in {0, 1}`` collapses into the rational part, so rational values are
    always stored with ``d == 0``.  Instances are immutable after
    construction and totally ordered; comparison across different radicands
    is exact.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike, b: RationalLike = 0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        if d < 0:
            raise DomainError("negative radicand")
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        elif d == 1:
            a, b, d = a + b, Fraction(0), 0
        else:
            s, d = squarefree_decompose(d)
            b *= s
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        self.a = a
        self.b = b
        self.d = d

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, x: RationalLike) -> "QuadraticNumber":
        return cls(Fraction(x))

    @classmethod
    def parse(cls, text: str) -> "QuadraticNumber":
        """Inverse of ``str``; accepts exactly the ``(a + b*sqrt(d))`` form."""
        m = _PARSE_RE.match(text.strip())
        if not m:
            raise DomainError(f"not a quadratic number literal: {text!r}")
        return cls(Fraction(m.group(1)), Fraction(m.group(2)), int(m.group(3)))

    # -- basic queries ------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def rational_value(self) -> Fraction:
        if self.d != 0:
            raise DomainError("not a rational value")
        return self.a

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}; needs at most one squaring."""
        return _sign_one_radical(self.a, self.b, self.d)

    def compare(self, other) -> int:
        """Exact three-way comparison, cross-radicand included."""
        other = _coerce(other)
        if self.d == 0 or other.d == 0 or self.d == other.d:
            if self.d == other.d:
                diff = QuadraticNumber(self.a - other.a, self.b - other.b, self.d)
            elif self.d == 0:
                diff = QuadraticNumber(self.a - other.a, -other.b, other.d)
            else:
                diff = QuadraticNumber(self.a - other.a, self.b, self.d)
            return diff.sign()
        return _sign_two_radicals(self.a - other.a, self.b, self.d, -other.b, other.d)

    def floor(self) -> int:
        """Largest integer ``n`` with ``n <= self``, decided exactly."""
        if self.d == 0:
            return math.floor(self.a)
        lo, _ = self.bounds(20)
        n = math.floor(lo)
        while self.compare(Fraction(n + 1)) >= 0:
            n += 1
        while self.compare(Fraction(n)) < 0:
            n -= 1
        return n

    def bounds(self, digits: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure ``lo <= self <= hi`` of width < ``2*|b| * 10**-digits``."""
        if self.d == 0:
            return self.a, self.a
        scale = 10 ** digits
        s = math.isqrt(self.d * scale * scale)
        root_lo, root_hi = Fraction(s, scale), Fraction(s + 1, scale)
        if self.b >= 0:
            return self.a + self.b * root_lo, self.a + self.b * root_hi
        return self.a + self.b * root_hi, self.a + self.b * root_lo

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "QuadraticNumber":
        other = _coerce(other)
        if self.d == other.d:
            return QuadraticNumber(self.a + other.a, self.b + other.b, self.d)
        if self.d == 0:
            return QuadraticNumber(self.a + other.a, other.b, other.d)
        if other.d == 0:
            return QuadraticNumber(self.a + other.a, self.b, self.d)
        raise DomainError("cannot add quadratic numbers from different fields")

    __radd__ = __add__

    def __sub__(self, other) -> "QuadraticNumber":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QuadraticNumber":
        return _coerce(other) + (-self)

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __abs__(self) -> "QuadraticNumber":
        return -self if self.sign() < 0 else self

    def __mul__(self, other) -> "QuadraticNumber":
        other = _coerce(other)
        if self.d == other.d:
            return QuadraticNumber(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        if self.d == 0:
            return QuadraticNumber(self.a * other.a, self.a * other.b, other.d)
        if other.d == 0:
            return QuadraticNumber(self.a * other.a, self.b * other.a, self.d)
        raise DomainError("cannot multiply quadratic numbers from different fields")

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QuadraticNumber":
        other = _coerce(other)
        if other.sign() == 0:
            raise DomainError("division by zero")
        if other.d == 0:
            return QuadraticNumber(self.a / other.a, self.b / other.a, self.d)
        norm = other.a * other.a - other.b * other.b * other.d
        conj = QuadraticNumber(other.a, -other.b, other.d)
        return (self * conj) / norm

    def __rtruediv__(self, other) -> "QuadraticNumber":
        return _coerce(other) / self

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QuadraticNumber, Fraction, int)):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other) -> bool:
        if not isinstance(other, (QuadraticNumber, Fraction, int)):
            return NotImplemented
        return self.compare(other) < 0

    __hash__ = None  # intentionally unhashable: equality is value-based across fields

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.d}))"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.a!r}, {self.b!r}, {self.d})"

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def decimal(self, digits: int = 12) -> str:
        """Non-authoritative decimal rendering for display."""
        lo, hi = self.bounds(digits + 2)
        mid = (lo + hi) / 2
        # format from a scaled integer to avoid float rounding
        scaled = round(mid * 10 ** digits)
        sign = "-" if scaled < 0 else ""
        scaled = abs(scaled)
        whole, frac = divmod(scaled, 10 ** digits)
        return f"{sign}{whole}.{str(frac).zfill(digits)}"


def _coerce(x) -> QuadraticNumber:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticNumber(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as a quadratic number")


def sqrt_exact(x: RationalLike) -> QuadraticNumber:
    """Exact square root of a nonnegative rational.

    Perfect squares come back rational (radicand 0); otherwise the result is
    ``(s/q) * sqrt(d)`` with ``d`` the reduced radicand of ``p*q`` for
    ``x = p/q``.
    """
    x = Fraction(x)
    if x < 0:
        raise DomainError("square root of a negative rational")
    if x == 0:
        return QuadraticNumber(0)
    n = x.numerator * x.denominator
    s, d = squarefree_decompose(n)
    coeff = Fraction(s, x.denominator)
    if d == 1:
        return QuadraticNumber(coeff)
    return QuadraticNumber(0, coeff, d)


def qn_sign(x: QuadraticNumber) -> int:
    return _coerce(x).sign()


def qn_compare_cross(x, y) -> int:
    """Exact ordering of two quadratic numbers from possibly different fields."""
    return _coerce(x).compare(y)


def format_rational(x: RationalLike) -> str:
    """Render ``p/q`` (or plain ``p`` when the denominator is 1)."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational literal: {text!r}") from exc
