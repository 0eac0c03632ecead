"""Left-right words and {1,2} continued-fraction expansions of exceptional slopes.

Every slope strictly between 0 and 1/2 in the tree has two continued-fraction
expansions built from ones and twos; the even-length one is a palindrome and
obeys the concatenation rule ``child_even = right_odd + "2" + left_even`` over
the parent pair.  Slopes are equally addressed by finite words over {L, R}
(the choices of the bracketing descent), and eventually-constant infinite
words name exactly the interval endpoints.  ``cf_eval`` is the brute-force
evaluator that serves as the independent oracle for all of this.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from . import exceptional
from .errors import ConsistencyError, DomainError
from .exceptional import DyadicRational, ExceptionalSlope
from .qarith import RationalLike

Word = str  # finite words over {L, R}


def _check_word(word: Word) -> None:
    if any(ch not in "LR" for ch in word):
        raise DomainError(f"not an LR word: {word!r}")


def _digits(word) -> list[int]:
    if isinstance(word, str):
        digits = [int(ch) for ch in word]
    else:
        digits = [int(a) for a in word]
    if any(a <= 0 for a in digits):
        raise DomainError("continued-fraction digits must be positive")
    return digits


def cf_eval(word) -> Fraction:
    """Value of ``[0; a1, ..., ak]``; the empty word evaluates to 0.

    This is the independent brute-force oracle for every expansion
    operation: it never consults the tree recursion.
    """
    value = Fraction(0)
    for a in reversed(_digits(word)):
        value = Fraction(1, 1) / (a + value)
    return value


def parity_convert(word: str) -> str:
    """The other expansion of the same rational; length parity flips."""
    digits = _digits(word)
    if not digits:
        raise DomainError("cannot convert the empty expansion")
    if digits[-1] == 1:
        if len(digits) == 1:
            raise DomainError("[0;1] has no positive-digit partner expansion")
        digits.pop()
        digits[-1] += 1
    else:
        digits[-1] -= 1
        digits.append(1)
    return "".join(str(a) for a in digits)


_EVEN_MEMO: dict[Fraction, str] = {}


def even_expansion(slope) -> str:
    """Even-length expansion of an exceptional slope in [0, 1/2].

    Callers normalize arbitrary slopes into this window by integer
    translation and negation first.  Computed by recursion over the parent
    pair; the base cases are the window's endpoints.
    """
    if isinstance(slope, ExceptionalSlope):
        g = slope
    else:
        g = exceptional.from_slope_value(Fraction(slope))
    mu = g.slope
    if not 0 <= mu <= Fraction(1, 2):
        raise DomainError(f"slope {mu} outside [0, 1/2]; normalize first")
    return _even_expansion(g)


def _even_expansion(g: ExceptionalSlope) -> str:
    mu = g.slope
    cached = _EVEN_MEMO.get(mu)
    if cached is not None:
        return cached
    if mu == 0:
        word = ""
    elif mu == Fraction(1, 2):
        word = "11"
    else:
        left, right = exceptional.parents(g)
        word = parity_convert(_even_expansion(right)) + "2" + _even_expansion(left)
    return _EVEN_MEMO.setdefault(mu, word)


def odd_expansion(slope) -> str:
    """Odd-length expansion; undefined for slope 0 (the empty expansion)."""
    return parity_convert(even_expansion(slope))


def normalize_slope(mu: RationalLike) -> tuple[Fraction, int, bool]:
    """Map a slope into [0, 1/2] by integer translation and optional negation.

    Returns ``(normalized, shift, negated)`` with
    ``mu = shift + (-normalized if negated else normalized)``.
    """
    mu = Fraction(mu)
    n = mu.__floor__()
    f = mu - n
    if f <= Fraction(1, 2):
        return f, n, False
    return 1 - f, n + 1, True


# -- left-right words -------------------------------------------------------


def word_to_dyadic(word: Word) -> DyadicRational:
    """Dyadic address of ``0 . word`` under the tree action."""
    _check_word(word)
    p, q = 0, 0
    for ch in word:
        p = 2 * p - 1 if ch == "L" else 2 * p + 1
        q += 1
    return DyadicRational.make(p, q)


def dyadic_to_word(d: DyadicRational) -> tuple[int, Word]:
    """Integer translation ``n`` and the word addressing ``d - n`` in [0, 1)."""
    n = d.value.__floor__()
    f = d.value - n
    if f == 0:
        return n, ""
    fd = DyadicRational.from_fraction(f)
    p, q = fd.p, fd.q
    letters = []
    while q > 1:
        up = (p + 1) // 2
        if up % 2 == 1:
            letters.append("L")
            p = up
        else:
            letters.append("R")
            p = (p - 1) // 2
        q -= 1
    if p != 1:
        raise ConsistencyError(f"word walk left residue {p}/2 for {d}")
    letters.append("R")
    return n, "".join(reversed(letters))


def lr_to_slope(word: Word) -> ExceptionalSlope:
    """Slope ``0 . word``, computed by iterating the tree action.

    The state is the bracket (left parent, current, right parent); each
    letter replaces the current slope by its mediant with one parent.
    """
    _check_word(word)
    left = exceptional.from_integer(-1)
    current = exceptional.from_integer(0)
    right = exceptional.from_integer(1)
    for ch in word:
        if ch == "L":
            new = exceptional.dot(left, current)
            left, current, right = left, new, current
        else:
            new = exceptional.dot(current, right)
            left, current, right = current, new, right
    return current


def slope_to_lr(g: ExceptionalSlope) -> tuple[int, Word]:
    """Inverse of ``lr_to_slope`` up to integer translation."""
    return dyadic_to_word(g.dyadic)


def lr_parents(word: Word) -> tuple[Optional[Word], Optional[Word]]:
    """Parent words; both are initial segments of ``word``.

    The empty word addresses slope 0; ``None`` marks a parent outside the
    (-1, 1) window of the word tree (only reached from constant words).
    """
    _check_word(word)
    if not word:
        raise DomainError("the empty word has no parents")
    last = word[-1]
    run = len(word) - len(word.rstrip(last))
    head = word[:-run]
    if last == "L":
        if not head:
            return None, "L" * (run - 1)
        return head[:-1], head + "L" * (run - 1)
    if not head:
        return "R" * (run - 1), None
    return head + "R" * (run - 1), head[:-1]


class PeriodStructure(NamedTuple):
    block: str
    exponent: int
    tail: str
    beta_is_half: bool


def smallest_period(word: str) -> int:
    """Least p > 0 with word[i] == word[i+p] for all valid i."""
    k = len(word)
    for p in range(1, k + 1):
        if all(word[i] == word[i + p] for i in range(k - p)):
            return p
    return k


def period_structure(word: Word) -> PeriodStructure:
    """Repeating-block decomposition of the even expansion of ``0 . word``.

    For a word ending in R, write it as ``head + L + R^n``: the block is the
    odd expansion of the right parent followed by a 2, repeated n+1 times,
    with the even expansion of that parent's own left parent as the tail.
    When the right parent is 1/2 the whole expansion is a run of twos and is
    reported as block "2" (its true smallest period); the only word ending
    in L with that shape, RL, is handled the same way.  The decomposition is
    validated against the expansion before it is returned.
    """
    _check_word(word)
    g = lr_to_slope(word)
    expansion = _even_expansion(g)
    if word.endswith("L"):
        if set(expansion) != {"2"}:
            raise DomainError("period decomposition needs a word ending in R")
        result = PeriodStructure("2", len(expansion), "", True)
        return _validated(result, expansion)
    n = len(word) - len(word.rstrip("R"))
    head = word[:-n]
    if not head or not head.endswith("L"):
        raise DomainError("period decomposition needs a word of shape head+L+R^n")
    beta_word = head[:-1]
    beta = lr_to_slope(beta_word)
    if beta.slope == Fraction(1, 2):
        result = PeriodStructure("2", len(expansion), "", True)
        return _validated(result, expansion)
    alpha, _ = exceptional.parents(beta)
    block = parity_convert(_even_expansion(beta)) + "2"
    tail = _even_expansion(alpha)
    result = PeriodStructure(block, n + 1, tail, False)
    result = _validated(result, expansion)
    if smallest_period(expansion) != len(block):
        raise ConsistencyError(
            f"block length {len(block)} is not the smallest period of {expansion}"
        )
    return result


def _validated(result: PeriodStructure, expansion: str) -> PeriodStructure:
    rebuilt = result.block * result.exponent + result.tail
    if rebuilt != expansion:
        raise ConsistencyError(
            f"period decomposition {result} rebuilds {rebuilt!r}, expected {expansion!r}"
        )
    return result


# -- Cantor-set machinery ----------------------------------------------------


def cantor_approx(prefix: Word, depth: int) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of every Cantor point extending ``prefix``.

    Truncates the prefix at ``depth`` and returns the parent slopes of the
    reached tree node: the open bracket between them contains the component
    holding all points whose words extend the truncated prefix, and the
    enclosures shrink as the depth grows.
    """
    _check_word(prefix)
    if depth < 0:
        raise DomainError("negative depth")
    g = lr_to_slope(prefix[:depth])
    left, right = exceptional.parents(g)
    return left.slope, right.slope


def is_endpoint_word(prefix: Word, tail: Word) -> Optional[tuple[ExceptionalSlope, str]]:
    """Resolve an eventually-constant word to an interval endpoint.

    ``prefix + tail*inf`` with constant tail L names the right endpoint of
    the slope addressed by the prefix up to its final R (and mirrored for
    tail R).  Non-constant tails name no endpoint and return ``None``.
    """
    _check_word(prefix)
    _check_word(tail)
    if tail not in ("L", "R"):
        return None
    if tail == "L":
        stem = prefix.rstrip("L")
        if not stem:
            return exceptional.from_integer(-1), "right"
        return lr_to_slope(stem[:-1]), "right"
    stem = prefix.rstrip("R")
    if not stem:
        return exceptional.from_integer(1), "left"
    return lr_to_slope(stem[:-1]), "left"
