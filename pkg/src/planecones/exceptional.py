"""The tree of exceptional slopes, their intervals, and the fractal boundary curve.

Exceptional slopes are addressed by dyadic rationals through an
order-preserving correspondence: integers map to themselves and the slope at
the dyadic midpoint of two neighbours is their mediant under the ``dot``
operation.  Each slope ``a`` owns an open interval of halfwidth
``x_a = (3 - sqrt(5 + 8 delta_a)) / 2``; the boundary curve of stable
characters is a pair of parabolic arcs over every interval, and locating the
interval containing a given number is a bracketing descent through the tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chern import ChernCharacter, hilbert_poly
from .errors import ConsistencyError, DescentError, DomainError
from .qarith import QuadraticNumber, RationalLike, qn_compare_cross, sqrt_exact

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True)
class DyadicRational:
    """``p / 2**q`` in lowest terms: ``p`` odd unless ``q == 0``."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise DomainError("negative dyadic exponent")
        if self.q > 0 and self.p % 2 == 0:
            raise DomainError(f"unreduced dyadic {self.p}/2^{self.q}")

    @staticmethod
    def make(p: int, q: int) -> "DyadicRational":
        while q > 0 and p % 2 == 0:
            p //= 2
            q -= 1
        return DyadicRational(p, q)

    @staticmethod
    def from_fraction(x: RationalLike) -> "DyadicRational":
        x = Fraction(x)
        q = x.denominator.bit_length() - 1
        if 1 << q != x.denominator:
            raise DomainError(f"{x} is not a dyadic rational")
        return DyadicRational(x.numerator, q)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, 1 << self.q)

    @property
    def order(self) -> int:
        return self.q

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.p, self.q)

    def __str__(self) -> str:
        return str(self.p) if self.q == 0 else f"{self.p}/2^{self.q}"


def rank_of_slope(mu: Fraction) -> int:
    """Smallest positive integer r with r*mu integral."""
    return mu.denominator


def discriminant_of_slope(mu: Fraction) -> Fraction:
    """Discriminant of the exceptional bundle of slope mu: (1 - 1/r^2)/2."""
    r = rank_of_slope(mu)
    return (1 - Fraction(1, r * r)) / 2


def slope_dot(alpha: RationalLike, beta: RationalLike) -> Fraction:
    """Mediant slope ``(a+b)/2 + (delta_b - delta_a)/(3 + a - b)``."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    denom = 3 + alpha - beta
    if denom == 0:
        raise DomainError("mediant undefined: slopes differ by exactly 3")
    da = discriminant_of_slope(alpha)
    db = discriminant_of_slope(beta)
    return (alpha + beta) / 2 + (db - da) / denom


_EPSILON_MEMO: dict[tuple[int, int], Fraction] = {}


def epsilon(d: DyadicRational) -> Fraction:
    """Slope addressed by the dyadic ``d``.

    Memoized; the table is only ever extended with recomputable pure values,
    so concurrent readers and writers cannot observe an inconsistent state.
    """
    if d.q == 0:
        return Fraction(d.p)
    key = (d.p, d.q)
    cached = _EPSILON_MEMO.get(key)
    if cached is not None:
        return cached
    left = epsilon(DyadicRational.make(d.p - 1, d.q))
    right = epsilon(DyadicRational.make(d.p + 1, d.q))
    value = slope_dot(left, right)
    return _EPSILON_MEMO.setdefault(key, value)


@dataclass(frozen=True)
class ExceptionalSlope:
    """An exceptional slope together with its dyadic address."""

    slope: Fraction
    dyadic: DyadicRational

    @property
    def order(self) -> int:
        return self.dyadic.q

    @property
    def rank(self) -> int:
        return rank_of_slope(self.slope)

    @property
    def discriminant(self) -> Fraction:
        return discriminant_of_slope(self.slope)

    def character(self) -> ChernCharacter:
        r = self.rank
        mu = self.slope
        return ChernCharacter(
            Fraction(r), r * mu, r * (mu * mu / 2 - self.discriminant)
        )

    def interval_halfwidth(self) -> QuadraticNumber:
        return _interval_halfwidth(self.rank)

    def interval(self) -> tuple[QuadraticNumber, QuadraticNumber]:
        """Exact endpoints ``(slope - x, slope + x)`` of the owned interval."""
        w = self.interval_halfwidth()
        return QuadraticNumber(self.slope) - w, QuadraticNumber(self.slope) + w

    def __str__(self) -> str:
        return str(self.slope)


@lru_cache(maxsize=None)
def _interval_halfwidth(rank: int) -> QuadraticNumber:
    # x = (3 - sqrt(5 + 8*delta))/2 with 5 + 8*delta = (9 r^2 - 4)/r^2
    delta = (1 - Fraction(1, rank * rank)) / 2
    return (QuadraticNumber(3) - sqrt_exact(5 + 8 * delta)) / 2


def from_dyadic(d: DyadicRational) -> ExceptionalSlope:
    return ExceptionalSlope(epsilon(d), d)


def from_integer(n: int) -> ExceptionalSlope:
    return ExceptionalSlope(Fraction(n), DyadicRational(n, 0))


def from_slope_value(mu: RationalLike, max_order: int = DEFAULT_MAX_ORDER) -> ExceptionalSlope:
    """Resolve a rational known to be an exceptional slope; raise if it is not."""
    mu = Fraction(mu)
    found = find_interval(mu, max_order)
    if found.slope != mu:
        raise DomainError(f"{mu} is not an exceptional slope of order <= {max_order}")
    return found


def dot(alpha: ExceptionalSlope, beta: ExceptionalSlope,
        max_order: int = DEFAULT_MAX_ORDER) -> ExceptionalSlope:
    """Mediant of two exceptional slopes.

    For a consecutive pair in the dyadic tree (including the integer
    convention ``n = (n-1).(n+1)``) the address is the dyadic midpoint; any
    other pair is accepted and resolved by descent, which raises if the
    resulting rational is not exceptional.
    """
    value = slope_dot(alpha.slope, beta.slope)
    da, db = alpha.dyadic, beta.dyadic
    level = max(da.q, db.q)
    pa = da.p << (level - da.q)
    pb = db.p << (level - db.q)
    if pb - pa == 1:
        child = DyadicRational(2 * pa + 1, level + 1)
    elif level == 0 and pb - pa == 2:
        child = DyadicRational(pa + 1, 0)
    else:
        return from_slope_value(value, max_order)
    result = from_dyadic(child)
    if result.slope != value:
        raise ConsistencyError(
            f"mediant mismatch at {child}: tree gives {result.slope}, formula {value}"
        )
    return result


def parents(g: ExceptionalSlope) -> tuple[ExceptionalSlope, ExceptionalSlope]:
    """Neighbouring slopes one dyadic level up; integers use ``(n-1, n+1)``."""
    d = g.dyadic
    if d.q == 0:
        return from_integer(d.p - 1), from_integer(d.p + 1)
    return (
        from_dyadic(DyadicRational.make(d.p - 1, d.q)),
        from_dyadic(DyadicRational.make(d.p + 1, d.q)),
    )


def interval_contains(a: ExceptionalSlope, x, closed: bool) -> bool:
    """Exact membership of ``x`` in the interval of ``a`` (or its closure)."""
    left, right = a.interval()
    cl = qn_compare_cross(x, left)
    cr = qn_compare_cross(x, right)
    if closed:
        return cl >= 0 and cr <= 0
    return cl > 0 and cr < 0


def find_interval(x, max_order: int = DEFAULT_MAX_ORDER) -> ExceptionalSlope:
    """Locate the unique slope whose closed interval contains ``x``.

    Bracketing descent: start from the consecutive integers around ``x`` and
    repeatedly probe the mediant of the current dyadic bracket, narrowing to
    the left or right gap.  An input equal to an interval endpoint resolves
    to that interval's slope (closures are tested at every probe).
    Termination within ``max_order`` holds for every rational and for the
    quadratic irrationals arising from characters; genuine Cantor-set points
    would descend forever and trip the budget instead.
    """
    if isinstance(x, (int, Fraction)):
        x = QuadraticNumber(Fraction(x))
    n = x.floor()
    for m in (n, n + 1):
        candidate = from_integer(m)
        if interval_contains(candidate, x, closed=True):
            return candidate
    p, q = n, 0
    while q < max_order:
        child = from_dyadic(DyadicRational(2 * p + 1, q + 1))
        if interval_contains(child, x, closed=True):
            return child
        if qn_compare_cross(x, QuadraticNumber(child.slope)) < 0:
            p, q = 2 * p, q + 1
        else:
            p, q = 2 * p + 1, q + 1
    raise DescentError(
        f"no enclosing interval of order <= {max_order}: "
        f"input is a Cantor-set point or the budget is too small"
    )


@lru_cache(maxsize=None)
def delta_curve(mu: Fraction, max_order: int = DEFAULT_MAX_ORDER) -> Fraction:
    """Exact value of the classification boundary at a rational slope."""
    mu = Fraction(mu)
    a = find_interval(mu, max_order)
    return hilbert_poly(-abs(mu - a.slope)) - a.discriminant


def delta_curve_at(x: QuadraticNumber, max_order: int = DEFAULT_MAX_ORDER) -> QuadraticNumber:
    """Boundary value at a quadratic point, computed symbolically."""
    a = find_interval(x, max_order)
    t = abs(x - QuadraticNumber(a.slope))
    u = -t
    return (u * u + 3 * u + 2) / 2 - a.discriminant


def enumerate_slopes(lo: RationalLike, hi: RationalLike,
                     max_order: int) -> list[ExceptionalSlope]:
    """All exceptional slopes of order <= max_order inside [lo, hi], sorted."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise DomainError("empty slope range")
    found = []
    d_lo, d_hi = math.floor(lo), math.ceil(hi)
    for n in range(d_lo, d_hi + 1):
        if lo <= n <= hi:
            found.append(from_integer(n))
    for q in range(1, max_order + 1):
        step = 1 << q
        for p in range(d_lo * step + 1, d_hi * step, 2):
            s = from_dyadic(DyadicRational(p, q))
            if lo <= s.slope <= hi:
                found.append(s)
    found.sort(key=lambda s: s.slope)
    return found
