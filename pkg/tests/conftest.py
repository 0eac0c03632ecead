import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from planecones import Kind, classify
from planecones.chern import ChernCharacter, hilbert_poly
from planecones.exceptional import delta_curve, enumerate_slopes

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def picard_rank2_grid() -> list[ChernCharacter]:
    """Deterministic grid of valid Picard-rank-2 characters, r in 1..6, |c1| <= 8."""
    grid = []
    for r in range(1, 7):
        for c1 in range(-8, 9):
            for chi in range(-6, 7):
                x = ChernCharacter(
                    Fraction(r), Fraction(c1), Fraction(chi) - r - Fraction(3, 2) * c1
                )
                if classify(x).kind is Kind.PICARD_RANK_2:
                    grid.append(x)
    return grid


@pytest.fixture(scope="session")
def grid() -> list[ChernCharacter]:
    return picard_rank2_grid()


def stable_orthogonal_slopes_below(x: ChernCharacter, mu_plus: Fraction,
                                   qmax: int = 60) -> list[Fraction]:
    """Brute-force search for stable orthogonal slopes strictly below mu_plus.

    Enumerates rational points of the orthogonality parabola with bounded
    denominator in the window where the tensor slope stays nonnegative; a
    point is stable when its discriminant clears the boundary curve, or when
    it is exactly an exceptional point (the only stable points below the
    half-height line, where the parabola is increasing).
    """
    mu_xi, d_xi = x.slope(), x.discriminant()
    lo = -mu_xi
    found = set()
    for s in enumerate_slopes(lo, mu_plus, 6):
        if s.rank <= qmax and lo <= s.slope < mu_plus:
            if hilbert_poly(mu_xi + s.slope) - d_xi == s.discriminant:
                found.add(s.slope)
    for q in range(1, qmax + 1):
        for p in range(math.ceil(lo * q), math.ceil(mu_plus * q)):
            if math.gcd(p, q) != 1:
                continue
            mu = Fraction(p, q)
            if mu >= mu_plus:
                continue
            delta = hilbert_poly(mu_xi + mu) - d_xi
            if delta < Fraction(1, 2):
                continue
            if delta >= delta_curve(mu):
                found.add(mu)
    return sorted(found)


CASE_1_PRIME_FAMILY = [
    ChernCharacter.from_rmd(2, 0, Fraction(11, 2)),
    ChernCharacter.from_rmd(2, 1, Fraction(11, 2)),
    ChernCharacter.from_rmd(2, -1, Fraction(11, 2)),
]
