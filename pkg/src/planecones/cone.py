"""End-to-end pipeline: classification, orthogonal invariants, resolutions,
Kronecker data and the extremal rays of the effective cone.

The pipeline for a positive-rank character with a rank-two Picard group:
intersect its orthogonal-parabola with the half-height line, locate the
enclosing interval in the tree of exceptional slopes, branch on the sign of
the pairing with that slope's bundle to pick the orthogonal invariants and
the resolving triple of exceptional bundles, then read off multiplicities,
the induced Kronecker-module fibration and the numerical wall.  The
secondary edge comes from the dual pipeline for rank >= 3 and from known
divisor classes in low rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from . import exceptional
from .chern import (
    ChernCharacter,
    HalfPlane,
    SlopeDisc,
    euler_chi_pair,
    euler_pairing,
    half_plane,
    hilbert_poly,
    moduli_dimension,
    natural_classes,
)
from .errors import ConsistencyError, DomainError
from .exceptional import DEFAULT_MAX_ORDER, ExceptionalSlope, delta_curve, find_interval
from .qarith import QuadraticNumber, sqrt_exact


class Kind(Enum):
    EXCEPTIONAL = "EXCEPTIONAL"
    HEIGHT_ZERO = "HEIGHT_ZERO"
    PICARD_RANK_2 = "PICARD_RANK_2"
    RANK_ZERO_PICARD_RANK_2 = "RANK_ZERO_PICARD_RANK_2"
    INVALID = "INVALID"


class CaseSign(Enum):
    POSITIVE = "POSITIVE"
    ZERO = "ZERO"
    NEGATIVE = "NEGATIVE"


class Fibration(Enum):
    BIRATIONAL = "BIRATIONAL"
    POSITIVE_DIM_FIBERS = "POSITIVE_DIM_FIBERS"


class SecondaryMode(Enum):
    SERRE_DUAL = "SERRE_DUAL"
    RANK2_SINGULAR_LOCUS = "RANK2_SINGULAR_LOCUS"
    RANK1_HILBERT_CHOW = "RANK1_HILBERT_CHOW"
    RANK0_SUPPORT_MAP = "RANK0_SUPPORT_MAP"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class OrthogonalInvariants:
    point: SlopeDisc
    case_sign: CaseSign
    on_delta_curve: bool
    corresponding_slope: ExceptionalSlope


@dataclass(frozen=True)
class ResolutionData:
    case_sign: CaseSign
    triad_slopes: tuple[ExceptionalSlope, ...]
    triad: tuple[ChernCharacter, ...]
    m1: int
    m2: int
    m3: Optional[int]
    shape: str


@dataclass(frozen=True)
class KroneckerData:
    hom_count: int
    dim_vector: tuple[int, int]
    expected_dimension: int
    fibration: Fibration


@dataclass(frozen=True)
class Wall:
    center_s: Fraction
    radius: QuadraticNumber
    radius_squared: Fraction
    exceeds_collapse_bound: bool  # radius > sqrt(5)/2, automatic when delta+ > 1/2


@dataclass(frozen=True)
class PrimaryEdge:
    invariants: OrthogonalInvariants
    extremal_character: ChernCharacter
    basis_coords: Optional[tuple[Fraction, Fraction]]
    resolution: Optional[ResolutionData]
    kronecker: Optional[KroneckerData]
    wall: Wall
    movable_edge_coincides: bool


@dataclass(frozen=True)
class SecondaryEdge:
    mode: SecondaryMode
    invariants: Optional[SlopeDisc]
    corresponding_slope: Optional[ExceptionalSlope]
    extremal_character: Optional[ChernCharacter]
    basis_coords: Optional[tuple[Fraction, Fraction]]
    descriptor: str
    dual_primary: Optional[PrimaryEdge]  # full pipeline on the Serre dual


@dataclass(frozen=True)
class ConeReport:
    input: ChernCharacter
    classification: Classification
    dimension: Optional[int]
    natural: Optional[tuple[ChernCharacter, ChernCharacter]]
    mu0_plus: Optional[QuadraticNumber]
    mu0_minus: Optional[QuadraticNumber]
    primary: Optional[PrimaryEdge]
    secondary: Optional[SecondaryEdge]
    note: Optional[str]


# -- classification ----------------------------------------------------------


def classify(x: ChernCharacter, max_order: int = DEFAULT_MAX_ORDER) -> Classification:
    """Decide which kind of moduli space the character admits.

    Integrality gates first (integer rank and first Chern class, integer
    Euler characteristic), then position relative to the boundary curve.
    """
    reasons: list[str] = []
    if x.ch0.denominator != 1:
        return Classification(Kind.INVALID, ("rank is not an integer",))
    if x.ch1.denominator != 1:
        return Classification(Kind.INVALID, ("first Chern class is not an integer",))
    if x.euler_chi().denominator != 1:
        return Classification(Kind.INVALID, ("Euler characteristic is not an integer",))
    if x.ch0 < 0:
        return Classification(Kind.INVALID, ("negative rank",))

    if x.ch0 == 0:
        d = x.ch1
        if d < 3:
            return Classification(
                Kind.INVALID,
                (f"rank zero needs first Chern class d >= 3, got {d}",),
            )
        return Classification(
            Kind.RANK_ZERO_PICARD_RANK_2,
            (f"pure one-dimensional sheaves of degree {d}",),
        )

    mu = x.slope()
    delta = x.discriminant()
    boundary = delta_curve(mu, max_order)
    if delta > boundary:
        reasons.append("discriminant exceeds the boundary curve")
        return Classification(Kind.PICARD_RANK_2, tuple(reasons))
    if delta == boundary:
        reasons.append("discriminant sits exactly on the boundary curve")
        return Classification(Kind.HEIGHT_ZERO, tuple(reasons))
    enclosing = find_interval(mu, max_order)
    if (
        mu == enclosing.slope
        and delta == enclosing.discriminant
        and (x.ch0 / enclosing.rank).denominator == 1
        and x.ch0 > 0
    ):
        reasons.append(
            f"positive multiple of the exceptional character of slope {mu}"
        )
        return Classification(Kind.EXCEPTIONAL, tuple(reasons))
    reasons.append("discriminant below the boundary curve and not an exceptional multiple")
    return Classification(Kind.INVALID, tuple(reasons))


# -- the corresponding slope ---------------------------------------------------


def intersection_slope_zero(x: ChernCharacter,
                            max_order: int = DEFAULT_MAX_ORDER) -> QuadraticNumber:
    """Larger slope where the orthogonal locus meets the half-height line.

    For positive rank this is ``(-3 - 2 mu + sqrt(5 + 8 delta)) / 2``; the
    rank-zero locus is the vertical line ``mu = -chi/d`` so the intersection
    is that rational itself.
    """
    kind = classify(x, max_order).kind
    if kind not in (Kind.PICARD_RANK_2, Kind.RANK_ZERO_PICARD_RANK_2):
        raise DomainError(f"no intersection slope for {kind.value} characters")
    if x.ch0 == 0:
        return QuadraticNumber(-x.euler_chi() / x.ch1)
    radicand = 5 + 8 * x.discriminant()
    if radicand < 0:
        raise ConsistencyError("negative discriminant radicand under valid classification")
    return (QuadraticNumber(-3 - 2 * x.slope()) + sqrt_exact(radicand)) / 2


def _mu0_pair(x: ChernCharacter) -> tuple[QuadraticNumber, Optional[QuadraticNumber]]:
    if x.ch0 == 0:
        return QuadraticNumber(-x.euler_chi() / x.ch1), None
    root = sqrt_exact(5 + 8 * x.discriminant())
    base = QuadraticNumber(-3 - 2 * x.slope())
    return (base + root) / 2, (base - root) / 2


def corresponding_slope(x: ChernCharacter,
                        max_order: int = DEFAULT_MAX_ORDER) -> ExceptionalSlope:
    """The unique exceptional slope whose interval encloses the intersection."""
    return find_interval(intersection_slope_zero(x, max_order), max_order)


# -- orthogonal invariants -----------------------------------------------------


def orthogonal_invariants(x: ChernCharacter,
                          max_order: int = DEFAULT_MAX_ORDER) -> OrthogonalInvariants:
    """The point spanning the primary extremal ray, by sign of the pairing.

    Positive pairing intersects the orthogonal parabola with the left arc
    over the corresponding slope; negative pairing with the right arc (the
    left arc translated by -3); zero pairing returns the exceptional point
    itself.  Both intersections are translates of one quadratic, so the
    solve is linear and the solution rational.
    """
    gamma = corresponding_slope(x, max_order)
    pairing = euler_pairing(x, gamma.character())
    if pairing > 0:
        case = CaseSign.POSITIVE
    elif pairing < 0:
        case = CaseSign.NEGATIVE
    else:
        case = CaseSign.ZERO

    if case is CaseSign.ZERO:
        point = SlopeDisc(gamma.slope, gamma.discriminant)
    else:
        ref_slope = -gamma.slope if case is CaseSign.POSITIVE else -gamma.slope - 3
        ref_delta = gamma.discriminant
        if x.ch0 != 0:
            a, b = x.slope(), ref_slope
            if a == b:
                raise ConsistencyError("coincident parabolas in the invariant solve")
            delta_diff = x.discriminant() - ref_delta
            mu = (2 * delta_diff / (a - b) - a - b - 3) / 2
            point = SlopeDisc(mu, hilbert_poly(a + mu) - x.discriminant())
        else:
            mu = -x.euler_chi() / x.ch1
            point = SlopeDisc(mu, hilbert_poly(ref_slope + mu) - ref_delta)

    on_curve = case is not CaseSign.POSITIVE or point.mu <= gamma.slope
    return OrthogonalInvariants(point, case, on_curve, gamma)


def minimal_orthogonal_rank(point: SlopeDisc) -> int:
    """Least positive rank making both c1 and chi integral at this point."""
    chi_per_rank = hilbert_poly(point.mu) - point.delta
    return math.lcm(point.mu.denominator, chi_per_rank.denominator)


def orthogonal_character(inv: OrthogonalInvariants, multiplier: int = 1,
                         max_order: int = DEFAULT_MAX_ORDER) -> ChernCharacter:
    """Integral character on the primary ray, at the minimal rank times a multiplier."""
    if multiplier < 1:
        raise DomainError("multiplier must be a positive integer")
    point = inv.point
    r = minimal_orthogonal_rank(point) * multiplier
    result = ChernCharacter.from_rmd(r, point.mu, point.delta)
    if inv.case_sign is CaseSign.ZERO:
        expected = exceptional.discriminant_of_slope(point.mu)
        if point.delta != expected:
            raise ConsistencyError("zero-pairing invariants drifted off the exceptional point")
    elif point.delta < delta_curve(point.mu, max_order):
        raise ConsistencyError(f"orthogonal invariants {point} below the boundary curve")
    return result


# -- resolutions ----------------------------------------------------------------


def _bundle_name(slope: Fraction) -> str:
    if slope.denominator == 1:
        return "O" if slope == 0 else f"O({slope})"
    if slope.denominator == 2:
        return f"T({slope - Fraction(3, 2)})"
    return f"E({slope})"


def _exc_char(slope: Fraction) -> ChernCharacter:
    return exceptional.from_slope_value(slope).character()


def triad_select(x: ChernCharacter,
                 max_order: int = DEFAULT_MAX_ORDER) -> ResolutionData:
    """Resolution data with the case-dependent triple of exceptional bundles."""
    return resolution_multiplicities(x, max_order)


def resolution_multiplicities(x: ChernCharacter,
                              max_order: int = DEFAULT_MAX_ORDER) -> ResolutionData:
    """Multiplicities of the canonical resolution of the general sheaf.

    All three multiplicities are Euler characteristics of twists by
    exceptional bundles; they must come out as nonnegative integers and the
    signed combination of the resolving characters must reproduce the input,
    both of which are verified before returning.
    """
    cls = classify(x, max_order)
    if cls.kind is not Kind.PICARD_RANK_2 or x.ch0 <= 0:
        raise DomainError("resolutions are computed for positive-rank Picard-rank-2 characters")
    inv = orthogonal_invariants(x, max_order)
    gamma = inv.corresponding_slope
    left, right = exceptional.parents(gamma)
    case = inv.case_sign

    if case is CaseSign.POSITIVE:
        left_child = exceptional.dot(left, gamma)
        m1 = -euler_pairing(x, left.character())
        m2 = -euler_pairing(x, left_child.character())
        m3 = euler_pairing(x, gamma.character())
        slopes = (-left.slope - 3, -right.slope, -gamma.slope)
        chars = tuple(_exc_char(s) for s in slopes)
        recon = (
            chars[0].scale(-m1) + chars[1].scale(m2) + chars[2].scale(m3)
        )
        shape = (
            f"0 -> {_bundle_name(slopes[0])}^{m1} -> "
            f"{_bundle_name(slopes[1])}^{m2} (+) {_bundle_name(slopes[2])}^{m3} -> U -> 0"
        )
    elif case is CaseSign.NEGATIVE:
        right_child = exceptional.dot(gamma, right)
        m1 = euler_pairing(x, right_child.character())
        m2 = euler_pairing(x, right.character())
        m3 = -euler_pairing(x, gamma.character())
        slopes = (-gamma.slope - 3, -left.slope - 3, -right.slope)
        chars = tuple(_exc_char(s) for s in slopes)
        recon = (
            chars[1].scale(-m1) + chars[2].scale(m2) + chars[0].scale(-m3)
        )
        shape = (
            f"triangle W -> U -> {_bundle_name(slopes[0])}^{m3}[1], "
            f"with 0 -> {_bundle_name(slopes[1])}^{m1} -> {_bundle_name(slopes[2])}^{m2} -> W -> 0"
        )
    else:
        m1 = -euler_pairing(x, left.character())
        m2 = euler_pairing(x, right.character())
        m3 = None
        slopes = (-left.slope - 3, -right.slope)
        chars = tuple(_exc_char(s) for s in slopes)
        recon = chars[0].scale(-m1) + chars[1].scale(m2)
        shape = (
            f"0 -> {_bundle_name(slopes[0])}^{m1} -> {_bundle_name(slopes[1])}^{m2} -> U -> 0"
        )

    ms = [m for m in (m1, m2, m3) if m is not None]
    for m in ms:
        if m.denominator != 1 or m < 0:
            raise ConsistencyError(f"multiplicity {m} is not a nonnegative integer for {x}")
    if recon != x:
        raise ConsistencyError(f"resolution of {x} rebuilds {recon}")
    triad_slopes = tuple(exceptional.from_slope_value(s) for s in slopes)
    return ResolutionData(
        case, triad_slopes, chars, int(m1), int(m2),
        None if m3 is None else int(m3), shape,
    )


def kronecker_data(x: ChernCharacter,
                   max_order: int = DEFAULT_MAX_ORDER) -> KroneckerData:
    """Invariants of the induced fibration over a space of Kronecker modules.

    The module pair is the two-term complex of the resolution; the arrow
    count is the hom space between its bundles.  The moduli dimension must
    exceed the expected Kronecker dimension exactly when the pairing case is
    nonzero, and match it when the fibration is birational.
    """
    res = resolution_multiplicities(x, max_order)
    if res.case_sign is CaseSign.NEGATIVE:
        source, target = res.triad[1], res.triad[2]
    else:
        source, target = res.triad[0], res.triad[1]
    n = euler_chi_pair(source, target)
    if n.denominator != 1 or n <= 0:
        raise ConsistencyError(f"hom count {n} is not a positive integer")
    n = int(n)
    b, a = res.m1, res.m2
    edim = a * b * n - a * a - b * b + 1
    fibration = (
        Fibration.BIRATIONAL if res.case_sign is CaseSign.ZERO
        else Fibration.POSITIVE_DIM_FIBERS
    )
    dim = moduli_dimension(x)
    if fibration is Fibration.BIRATIONAL:
        if dim != edim:
            raise ConsistencyError(
                f"birational fibration but dim {dim} != expected {edim}"
            )
    elif dim <= edim:
        raise ConsistencyError(
            f"fibration with positive-dimensional fibers needs dim {dim} > expected {edim}"
        )
    return KroneckerData(n, (b, a), edim, fibration)


def bridgeland_wall(inv: OrthogonalInvariants) -> Wall:
    """Numerical wall in the stability half-plane picked out by the invariants."""
    point = inv.point
    center = -point.mu - Fraction(3, 2)
    radius_sq = 2 * point.delta + Fraction(1, 4)
    if radius_sq < 0:
        raise DomainError("negative squared radius")
    return Wall(
        center_s=center,
        radius=sqrt_exact(radius_sq),
        radius_squared=radius_sq,
        exceeds_collapse_bound=radius_sq > Fraction(5, 4),
    )


# -- cone assembly ---------------------------------------------------------------


def _basis_coords(x: ChernCharacter, ray: ChernCharacter) -> tuple[Fraction, Fraction]:
    """Coordinates of an orthogonal class in the natural-class basis."""
    zeta0, zeta1 = natural_classes(x)
    c0 = ray.ch0 / zeta0.ch0
    c1 = ray.ch1 / zeta1.ch1
    rebuilt = zeta0.scale(c0) + zeta1.scale(c1)
    if rebuilt != ray:
        raise ConsistencyError(f"{ray} does not lie in the orthogonal plane of {x}")
    return c0, c1


def _primary_edge(x: ChernCharacter, multiplier: int, max_order: int) -> PrimaryEdge:
    inv = orthogonal_invariants(x, max_order)
    ray = orthogonal_character(inv, multiplier, max_order)
    if euler_pairing(x, ray) != 0:
        raise ConsistencyError("primary ray is not orthogonal to the input")
    if half_plane(x, ray) is not HalfPlane.PRIMARY:
        raise ConsistencyError("primary ray fell outside the primary half-plane")
    if inv.case_sign is CaseSign.POSITIVE:
        opposite = _exc_char(-inv.corresponding_slope.slope)
        if euler_pairing(ray, opposite) != 0:
            raise ConsistencyError("positive-case double orthogonality failed")
    coords = _basis_coords(x, ray) if x.ch0 > 0 else None
    if x.ch0 > 0:
        res = resolution_multiplicities(x, max_order)
        kron = kronecker_data(x, max_order)
    else:
        res = None
        kron = None
    return PrimaryEdge(
        invariants=inv,
        extremal_character=ray,
        basis_coords=coords,
        resolution=res,
        kronecker=kron,
        wall=bridgeland_wall(inv),
        movable_edge_coincides=inv.case_sign is not CaseSign.ZERO,
    )


def secondary_edge(x: ChernCharacter, multiplier: int = 1,
                   max_order: int = DEFAULT_MAX_ORDER) -> SecondaryEdge:
    """Second extremal ray: dual pipeline for rank >= 3, known classes below.

    Rank 2 uses the divisor of singular sheaves (a negative-rank orthogonal
    class of tensor slope -3/2); ranks 1 and 0 carry named divisor classes
    with no canonical character, so only descriptors are emitted.
    """
    r = x.ch0
    if r >= 3:
        xd = x.serre_dual()
        dual = _primary_edge(xd, multiplier, max_order)
        inv_d = dual.invariants
        point = SlopeDisc(-inv_d.point.mu, inv_d.point.delta)
        slope = exceptional.from_dyadic(-inv_d.corresponding_slope.dyadic)
        positive = ChernCharacter.from_rmd(
            minimal_orthogonal_rank(point) * multiplier, point.mu, point.delta
        )
        ray = -positive
        return SecondaryEdge(
            mode=SecondaryMode.SERRE_DUAL,
            invariants=point,
            corresponding_slope=slope,
            extremal_character=ray,
            basis_coords=_basis_coords(x, ray),
            descriptor="h2-cohomology jumping divisor, from the dual pipeline",
            dual_primary=dual,
        )
    if r == 2:
        mu = -Fraction(3, 2) - x.slope()
        delta = hilbert_poly(x.slope() + mu) - x.discriminant()
        point = SlopeDisc(mu, delta)
        positive = ChernCharacter.from_rmd(minimal_orthogonal_rank(point), mu, delta)
        ray = -positive
        return SecondaryEdge(
            mode=SecondaryMode.RANK2_SINGULAR_LOCUS,
            invariants=point,
            corresponding_slope=None,
            extremal_character=ray,
            basis_coords=_basis_coords(x, ray),
            descriptor="divisor of singular (non-locally-free) sheaves",
            dual_primary=None,
        )
    if r == 1:
        return SecondaryEdge(
            mode=SecondaryMode.RANK1_HILBERT_CHOW,
            invariants=None,
            corresponding_slope=None,
            extremal_character=None,
            basis_coords=None,
            descriptor="exceptional divisor of the Hilbert-Chow morphism",
            dual_primary=None,
        )
    return SecondaryEdge(
        mode=SecondaryMode.RANK0_SUPPORT_MAP,
        invariants=None,
        corresponding_slope=None,
        extremal_character=None,
        basis_coords=None,
        descriptor="pullback of O(1) under the support morphism",
        dual_primary=None,
    )


def cone_report(x: ChernCharacter, multiplier: int = 1,
                max_order: int = DEFAULT_MAX_ORDER) -> ConeReport:
    """Full report for a character; classification-only when no rays exist."""
    cls = classify(x, max_order)
    dim: Optional[int] = None
    natural = None
    if cls.kind in (Kind.PICARD_RANK_2, Kind.HEIGHT_ZERO) and x.ch0 > 0:
        dim = moduli_dimension(x)
        natural = natural_classes(x)
    elif cls.kind is Kind.EXCEPTIONAL:
        dim = 0
        natural = natural_classes(x)

    if cls.kind is Kind.INVALID:
        return ConeReport(x, cls, None, None, None, None, None, None, None)
    if cls.kind in (Kind.EXCEPTIONAL, Kind.HEIGHT_ZERO):
        note = (
            "moduli space is a single point"
            if cls.kind is Kind.EXCEPTIONAL
            else "moduli space has Picard rank one"
        )
        return ConeReport(x, cls, dim, natural, None, None, None, None, note)

    mu0_plus, mu0_minus = _mu0_pair(x)
    primary = _primary_edge(x, multiplier, max_order)
    secondary = secondary_edge(x, multiplier, max_order)
    if secondary.extremal_character is not None:
        if euler_pairing(x, secondary.extremal_character) != 0:
            raise ConsistencyError("secondary ray is not orthogonal to the input")
        if half_plane(x, secondary.extremal_character) is not HalfPlane.SECONDARY:
            raise ConsistencyError("secondary ray fell outside the secondary half-plane")
    note = None
    if primary.invariants.case_sign is CaseSign.POSITIVE and not primary.invariants.on_delta_curve:
        note = (
            "invariants lie off the boundary curve: stable orthogonal slopes "
            "below mu+ exist but span non-effective rays"
        )
    return ConeReport(x, cls, dim, natural, mu0_plus, mu0_minus, primary, secondary, note)
