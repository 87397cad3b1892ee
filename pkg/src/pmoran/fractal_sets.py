"""Restricted sets S_(P,u), combination sets E, and their level covers."""
from __future__ import annotations

import csv
import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cylinders import (
    IntervalR,
    RestrictedCylinder,
    admissible_digits,
    ru_cyl_bounds,
    su_block_word,
)
from .errors import EmptyCombo, NotInSet, PrefixConflict, TooLarge, ValidationError
from .numrep import (
    EventuallyPeriodicSeq,
    ProbVector,
    check_digits,
    decode_P,
    format_digits,
    format_rational,
    invert_f,
    p_word,
    parse_digits,
)

DEFAULT_CAP = 10**7

__all__ = [
    "SuSetSpec",
    "CombinationAlphabet",
    "CoverLevel",
    "su_block_word",
    "parse_su_digits",
    "set_bounds_su",
    "level_cover_su",
    "cover_measure_su",
    "gamma_u",
    "member_su",
    "validate_combo_alphabet",
    "level_cover_combo",
    "set_bounds_combo",
    "extremal_stream",
    "member_combo",
    "write_cover_csv",
]


@dataclass(frozen=True)
class SuSetSpec:
    P: ProbVector
    u: int

    def __post_init__(self):
        if self.P.s < 3:
            raise ValidationError(f"restricted sets need s >= 3, got {self.P.s}")
        if not 0 <= self.u < self.P.s:
            raise ValidationError(f"u={self.u} outside [0, {self.P.s - 1}]")

    @property
    def s(self) -> int:
        return self.P.s

    @property
    def digits(self) -> tuple:
        return admissible_digits(self.P.s, self.u)

    @property
    def degenerate(self) -> bool:
        # one admissible block: the set is a single point (s=3, u in {1, 2})
        return len(self.digits) == 1


@dataclass(frozen=True)
class CombinationAlphabet:
    P: ProbVector
    combos: tuple
    digit_counts: tuple

    @property
    def m(self) -> int:
        return len(self.combos)

    def ratio(self, j: int) -> Fraction:
        """Product of p_i^N_i over combination j."""
        r = Fraction(1)
        for i, n in enumerate(self.digit_counts[j]):
            r *= self.P.p[i] ** n
        return r


@dataclass
class CoverLevel:
    k: int
    intervals: list = field(default_factory=list)
    total_measure: Fraction = Fraction(0)

    def lengths(self) -> list:
        return [iv.length for _, iv in self.intervals]


def parse_su_digits(w: Sequence[int], u: int, s: int | None = None):
    """Split a digit word into complete blocks u^(a-1) a.

    Returns ``(alphas, remainder)`` where the remainder is a trailing run of
    u's not yet closed. Raises NotInSet if no element's digit stream can
    start with ``w``.
    """
    alphas = []
    run = 0
    for d in w:
        if d == u:
            run += 1
            if s is not None and run + 1 > s - 1:
                raise NotInSet(f"run of {run} digits {u} cannot be closed in base {s}")
            continue
        if d == 0 or d != run + 1:
            raise NotInSet(f"digit {d} after {run} copies of {u} does not close a block")
        alphas.append(d)
        run = 0
    return tuple(alphas), (u,) * run


def set_bounds_su(spec: SuSetSpec) -> IntervalR:
    return ru_cyl_bounds(RestrictedCylinder(spec.P, spec.u))


def gamma_u(spec: SuSetSpec) -> Fraction:
    """Per-level measure contraction: sum of p_c p_u^(c-1) over admissible c."""
    pu = spec.P.p[spec.u]
    return sum((spec.P.p[c] * pu ** (c - 1) for c in spec.digits), Fraction(0))


def cover_measure_su(spec: SuSetSpec, k: int) -> Fraction:
    if k < 0:
        raise ValidationError(f"level must be >= 0, got {k}")
    return set_bounds_su(spec).length * gamma_u(spec) ** k


def _check_cap(count: int, cap: int):
    if count > cap:
        raise TooLarge(count, cap)


def _su_branch(spec: SuSetSpec, first: int, k: int) -> list:
    out = []
    for rest in itertools.product(spec.digits, repeat=k - 1):
        base = (first,) + rest
        out.append((base, ru_cyl_bounds(RestrictedCylinder(spec.P, spec.u, base))))
    return out


def level_cover_su(
    spec: SuSetSpec, k: int, cap: int = DEFAULT_CAP, parallel: bool = False
) -> CoverLevel:
    """All rank-k restricted cylinders, sorted by base word."""
    if k < 1:
        raise ValidationError(f"level must be >= 1, got {k}")
    if spec.degenerate:
        warnings.warn(f"S_(P,{spec.u}) with s={spec.s} has a single admissible digit")
    _check_cap(len(spec.digits) ** k, cap)
    if parallel and len(spec.digits) > 1:
        with ProcessPoolExecutor() as pool:
            parts = pool.map(_su_branch, itertools.repeat(spec), spec.digits, itertools.repeat(k))
            intervals = [item for part in parts for item in part]
    else:
        intervals = [item for c in spec.digits for item in _su_branch(spec, c, k)]
    intervals.sort(key=lambda item: item[0])
    total = sum((iv.length for _, iv in intervals), Fraction(0))
    return CoverLevel(k, intervals, total)


def _descend(x, k: int, root, children, bounds) -> bool:
    frontier = [root]
    for _ in range(k):
        frontier = [ch for node in frontier for ch in children(node) if x in bounds(ch)]
        if not frontier:
            return False
    return True


def member_su(x, spec: SuSetSpec, k: int) -> bool:
    """Whether x lies in the level-k cover of S_(P,u)."""
    x = Fraction(x)
    bounds = set_bounds_su(spec)
    if x not in bounds:
        return False
    if k <= 0:
        return True
    # fast path: read the P-digits of x and parse them into blocks
    depth = k * (spec.s - 1) + 1
    try:
        alphas, _ = parse_su_digits(invert_f(x, spec.P, depth), spec.u, spec.s)
    except NotInSet:
        alphas = ()
    if len(alphas) >= k and all(a in spec.digits for a in alphas[:k]):
        if x in ru_cyl_bounds(RestrictedCylinder(spec.P, spec.u, alphas[:k])):
            return True
    # boundary points and gaps: search the cylinder tree
    return _descend(
        x,
        k,
        RestrictedCylinder(spec.P, spec.u),
        lambda c: [c.child(d) for d in spec.digits],
        ru_cyl_bounds,
    )


def validate_combo_alphabet(P: ProbVector, combos) -> CombinationAlphabet:
    words = []
    for w in combos:
        if isinstance(w, str):
            w = parse_digits(w)
        w = check_digits(w, P.s)
        if not w:
            raise EmptyCombo("combinations must be nonempty digit words")
        words.append(w)
    if not words:
        raise EmptyCombo("alphabet must contain at least one combination")
    if len({len(w) for w in words}) > 1 or len(set(words)) < len(words):
        for j, a in enumerate(words):
            for k, b in enumerate(words):
                if j != k and b[: len(a)] == a:
                    raise PrefixConflict(j, k)
    counts = tuple(tuple(w.count(i) for i in range(P.s)) for w in words)
    return CombinationAlphabet(P, tuple(words), counts)


def extremal_stream(xi: CombinationAlphabet, largest: bool) -> EventuallyPeriodicSeq:
    """Lexicographically extreme infinite concatenation of the combinations.

    Walks the trie of the alphabet taking the smallest (or largest) branch at
    every node and returning to the root after each complete word; the walk
    is a function of the node alone, so it becomes periodic as soon as a
    node repeats.
    """
    pick = max if largest else min
    digits = []
    seen = {}
    node = ()
    while True:
        if node == ():
            if node in seen:
                i = seen[node]
                return EventuallyPeriodicSeq(xi.P.s, tuple(digits[:i]), tuple(digits[i:]))
            seen[node] = len(digits)
        live = [w for w in xi.combos if w[: len(node)] == node]
        d = pick(w[len(node)] for w in live if len(w) > len(node))
        digits.append(d)
        node = node + (d,)
        if node in xi.combos:
            node = ()


def set_bounds_combo(xi: CombinationAlphabet) -> IntervalR:
    lo = decode_P(extremal_stream(xi, largest=False), xi.P)
    hi = decode_P(extremal_stream(xi, largest=True), xi.P)
    return IntervalR(lo, hi)


def level_cover_combo(xi: CombinationAlphabet, k: int, cap: int = DEFAULT_CAP) -> CoverLevel:
    if k < 1:
        raise ValidationError(f"level must be >= 1, got {k}")
    _check_cap(xi.m**k, cap)
    whole = set_bounds_combo(xi)
    intervals = []
    for choice in itertools.product(range(xi.m), repeat=k):
        word = tuple(d for j in choice for d in xi.combos[j])
        value, weight = p_word(word, xi.P)
        intervals.append((word, IntervalR(value + weight * whole.lo, value + weight * whole.hi)))
    intervals.sort(key=lambda item: item[0])
    total = sum((iv.length for _, iv in intervals), Fraction(0))
    return CoverLevel(k, intervals, total)


def member_combo(x, xi: CombinationAlphabet, k: int) -> bool:
    x = Fraction(x)
    whole = set_bounds_combo(xi)
    if x not in whole:
        return False

    def children(prefix):
        return [prefix + w for w in xi.combos]

    def bounds(word):
        value, weight = p_word(word, xi.P)
        return IntervalR(value + weight * whole.lo, value + weight * whole.hi)

    return _descend(x, k, (), children, bounds)


def write_cover_csv(cover: CoverLevel, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["base_word", "lo", "hi", "length"])
    for base, iv in cover.intervals:
        writer.writerow(
            [format_digits(base), format_rational(iv.lo), format_rational(iv.hi), format_rational(iv.length)]
        )
