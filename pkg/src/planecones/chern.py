"""Chern characters on the projective plane and their numerical invariants.

A character is the exact triple ``(ch0, ch1, ch2)``.  For positive rank it is
equivalently recorded as ``(r, mu, delta)`` with slope ``mu = ch1/ch0`` and
discriminant ``delta = mu^2/2 - ch2/ch0``.  The Euler characteristic is the
single linear form ``ch0 + (3/2) ch1 + ch2`` so rank-zero characters need no
special casing; the Riemann-Roch form ``r (P(mu) - delta)`` is a derived
identity, not a second implementation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConsistencyError, DomainError, RankZeroError
from .qarith import RationalLike, format_rational, parse_rational


def hilbert_poly(m: RationalLike) -> Fraction:
    """Euler characteristic of O(m): ``(m^2 + 3m + 2) / 2``."""
    m = Fraction(m)
    return (m * m + 3 * m + 2) / 2


@dataclass(frozen=True)
class SlopeDisc:
    """A point (mu, delta) of the slope-discriminant plane."""

    mu: Fraction
    delta: Fraction


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction

    @staticmethod
    def of(ch0: RationalLike, ch1: RationalLike, ch2: RationalLike) -> "ChernCharacter":
        return ChernCharacter(Fraction(ch0), Fraction(ch1), Fraction(ch2))

    @staticmethod
    def from_rmd(r: RationalLike, mu: RationalLike, delta: RationalLike) -> "ChernCharacter":
        """Character with the given rank, slope and discriminant (rank nonzero)."""
        r, mu, delta = Fraction(r), Fraction(mu), Fraction(delta)
        if r == 0:
            raise DomainError("rank zero admits no (slope, discriminant) description")
        return ChernCharacter(r, r * mu, r * (mu * mu / 2 - delta))

    # -- invariants -----------------------------------------------------

    def slope(self) -> Fraction:
        if self.ch0 == 0:
            raise RankZeroError("slope of a rank-zero character")
        return self.ch1 / self.ch0

    def discriminant(self) -> Fraction:
        if self.ch0 == 0:
            raise RankZeroError("discriminant of a rank-zero character")
        mu = self.slope()
        return mu * mu / 2 - self.ch2 / self.ch0

    def slope_disc(self) -> SlopeDisc:
        return SlopeDisc(self.slope(), self.discriminant())

    def euler_chi(self) -> Fraction:
        return self.ch0 + Fraction(3, 2) * self.ch1 + self.ch2

    # -- K-theory operations ---------------------------------------------

    def tensor(self, other: "ChernCharacter") -> "ChernCharacter":
        """Multiplicative product; slope and discriminant are additive."""
        return ChernCharacter(
            self.ch0 * other.ch0,
            self.ch0 * other.ch1 + other.ch0 * self.ch1,
            self.ch0 * other.ch2 + self.ch1 * other.ch1 + other.ch0 * self.ch2,
        )

    def dual(self) -> "ChernCharacter":
        return ChernCharacter(self.ch0, -self.ch1, self.ch2)

    def twist(self, n: int) -> "ChernCharacter":
        """Tensor with O(n)."""
        return self.tensor(line_bundle(n))

    def serre_dual(self) -> "ChernCharacter":
        """Dual twisted by O(-3); fixes delta and sends mu to -mu - 3."""
        return self.dual().twist(-3)

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return self + (-other)

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(-self.ch0, -self.ch1, -self.ch2)

    def scale(self, k: RationalLike) -> "ChernCharacter":
        k = Fraction(k)
        return ChernCharacter(k * self.ch0, k * self.ch1, k * self.ch2)

    def __str__(self) -> str:
        return f"({self.ch0}, {self.ch1}, {self.ch2})"


def line_bundle(n: RationalLike) -> ChernCharacter:
    """Character of O(n)."""
    n = Fraction(n)
    return ChernCharacter(Fraction(1), n, n * n / 2)


def euler_pairing(x: ChernCharacter, z: ChernCharacter) -> Fraction:
    """Symmetric Euler pairing (x, z) = chi(x tensor z).

    For nonzero ranks this equals
    ``r(x) r(z) (P(mu(x) + mu(z)) - delta(x) - delta(z))``.
    """
    return x.tensor(z).euler_chi()


def euler_chi_pair(x: ChernCharacter, z: ChernCharacter) -> Fraction:
    """Sheaf-pair Euler characteristic chi(X, Z) = chi(X^v tensor Z)."""
    return euler_pairing(x.dual(), z)


class HalfPlane(Enum):
    PRIMARY = "PRIMARY"
    SECONDARY = "SECONDARY"
    ON_BOUNDARY = "ON_BOUNDARY"


def half_plane(x: ChernCharacter, z: ChernCharacter) -> HalfPlane:
    """Which half of the orthogonal plane of ``x`` the class ``z`` lies in.

    The rank-zero line splits the plane; positive rank is the primary side.
    """
    if euler_pairing(x, z) != 0:
        raise DomainError("class is not orthogonal to the character")
    if z.ch0 > 0:
        return HalfPlane.PRIMARY
    if z.ch0 < 0:
        return HalfPlane.SECONDARY
    return HalfPlane.ON_BOUNDARY


def moduli_dimension(x: ChernCharacter) -> int:
    """Dimension ``r^2 (2 delta - 1) + 1`` of a positive-dimensional moduli space."""
    if x.ch0 <= 0:
        raise DomainError("dimension formula needs positive rank")
    value = x.ch0 * x.ch0 * (2 * x.discriminant() - 1) + 1
    if value.denominator != 1:
        raise ConsistencyError(f"non-integer moduli dimension {value} for {x}")
    return int(value)


def natural_classes(x: ChernCharacter) -> tuple[ChernCharacter, ChernCharacter]:
    """The two canonical orthogonal classes spanning the orthogonal plane.

    The first has rank ``r(x)``; the second is the rank-zero class giving
    the morphism to the Donaldson-Uhlenbeck-Yau compactification.
    """
    if x.ch0 <= 0:
        raise DomainError("natural classes need positive rank")
    chi = x.euler_chi()
    zeta0 = ChernCharacter(x.ch0, Fraction(0), -chi)
    zeta1 = ChernCharacter(Fraction(0), x.ch0, -Fraction(3, 2) * x.ch0 - x.ch1)
    return zeta0, zeta1


# -- serialization ---------------------------------------------------------


def character_to_json(x: ChernCharacter) -> dict:
    """Canonical JSON object carrying both the chern and (r, mu, delta) views."""
    out = {
        "ch0": format_rational(x.ch0),
        "ch1": format_rational(x.ch1),
        "ch2": format_rational(x.ch2),
        "r": format_rational(x.ch0),
    }
    if x.ch0 != 0:
        out["mu"] = format_rational(x.slope())
        out["delta"] = format_rational(x.discriminant())
    else:
        out["mu"] = None
        out["delta"] = None
    out["c1"] = format_rational(x.ch1)
    out["chi"] = format_rational(x.euler_chi())
    return out


def character_from_json(data: dict) -> ChernCharacter:
    """Accepts {ch0, ch1, ch2}, {r, mu, delta} or {r, c1, chi} objects."""
    if not isinstance(data, dict):
        raise DomainError("character must be a JSON object")
    if {"ch0", "ch1", "ch2"} <= data.keys():
        return ChernCharacter(
            parse_rational(str(data["ch0"])),
            parse_rational(str(data["ch1"])),
            parse_rational(str(data["ch2"])),
        )
    if {"r", "mu", "delta"} <= data.keys() and data.get("mu") is not None:
        return ChernCharacter.from_rmd(
            parse_rational(str(data["r"])),
            parse_rational(str(data["mu"])),
            parse_rational(str(data["delta"])),
        )
    if {"r", "c1", "chi"} <= data.keys():
        r = parse_rational(str(data["r"]))
        c1 = parse_rational(str(data["c1"]))
        chi = parse_rational(str(data["chi"]))
        return ChernCharacter(r, c1, chi - r - Fraction(3, 2) * c1)
    raise DomainError(
        "character object needs keys {ch0, ch1, ch2}, {r, mu, delta} or {r, c1, chi}"
    )
