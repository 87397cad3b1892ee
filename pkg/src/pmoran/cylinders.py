"""Exact interval algebra for P-cylinders and restricted (P, u)-cylinders."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidAlpha, InvalidBaseDigit, InvalidNextDigit, ValidationError
from .numrep import EventuallyPeriodicSeq, ProbVector, check_digits, decode_P


@dataclass(frozen=True)
class IntervalR:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValidationError(f"interval with lo {self.lo} > hi {self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "IntervalR") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class Cylinder:
    P: ProbVector
    base: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", check_digits(self.base, self.P.s))


def p_cyl_bounds(c: Cylinder) -> IntervalR:
    s = c.P.s
    lo = decode_P(EventuallyPeriodicSeq(s, c.base, (0,)), c.P)
    hi = decode_P(EventuallyPeriodicSeq(s, c.base, (s - 1,)), c.P)
    return IntervalR(lo, hi)


def p_cyl_children(c: Cylinder) -> list[Cylinder]:
    return [Cylinder(c.P, c.base + (d,)) for d in range(c.P.s)]


def su_block_word(alpha: int, u: int) -> tuple:
    """The block u...u alpha with alpha - 1 copies of u."""
    if alpha <= 0 or alpha == u:
        raise InvalidAlpha(f"alpha={alpha} must be nonzero and differ from u={u}")
    return (u,) * (alpha - 1) + (alpha,)


def expand_base(base, u: int) -> tuple:
    out = ()
    for c in base:
        out += su_block_word(c, u)
    return out


def admissible_digits(s: int, u: int) -> tuple:
    """A_0 without u: the digits allowed as block closers."""
    return tuple(c for c in range(1, s) if c != u)


@dataclass(frozen=True)
class RestrictedCylinder:
    P: ProbVector
    u: int
    base: tuple = ()

    def __post_init__(self):
        s = self.P.s
        if not 0 <= self.u < s:
            raise ValidationError(f"u={self.u} outside [0, {s - 1}]")
        base = tuple(int(c) for c in self.base)
        for c in base:
            if c <= 0 or c >= s or c == self.u:
                raise InvalidBaseDigit(f"base digit {c} not in A_0 \\ {{{self.u}}}")
        object.__setattr__(self, "base", base)

    def child(self, c: int) -> "RestrictedCylinder":
        return RestrictedCylinder(self.P, self.u, self.base + (c,))


def inf_tail(s: int, u: int) -> tuple:
    if u == 0:
        return (0,) * (s - 2) + (s - 1,)
    if u == 1:
        return (1,) * (s - 2) + (s - 1,)
    return (1,)


def sup_tail(s: int, u: int) -> tuple:
    if u == s - 1:
        return (s - 1,) * (s - 3) + (s - 2,)
    if 1 <= u <= s - 2:
        return (u,) * u + (u + 1,)
    return (1,)


def ru_cyl_bounds(c: RestrictedCylinder) -> IntervalR:
    s = c.P.s
    prefix = expand_base(c.base, c.u)
    lo = decode_P(EventuallyPeriodicSeq(s, prefix, inf_tail(s, c.u)), c.P)
    hi = decode_P(EventuallyPeriodicSeq(s, prefix, sup_tail(s, c.u)), c.P)
    return IntervalR(lo, hi)


def ru_cyl_diameter(c: RestrictedCylinder) -> Fraction:
    """Closed-form diameter d(S) * p_u^(sum c - n) * prod p_c."""
    d0 = ru_cyl_bounds(RestrictedCylinder(c.P, c.u)).length
    scale = c.P.p[c.u] ** (sum(c.base) - len(c.base))
    for d in c.base:
        scale *= c.P.p[d]
    return d0 * scale


def ru_cyl_ratio(c: RestrictedCylinder, next_digit: int) -> Fraction:
    if next_digit <= 0 or next_digit >= c.P.s or next_digit == c.u:
        raise InvalidBaseDigit(f"next digit {next_digit} not in A_0 \\ {{{c.u}}}")
    return c.P.p[next_digit] * c.P.p[c.u] ** (next_digit - 1)


class GapOrder(enum.Enum):
    """Relative placement of sibling cylinders with next digits p and p+1."""

    INCREASING = "sup(child p) < inf(child p+1)"
    DECREASING = "inf(child p) > sup(child p+1)"
    OVERLAP = "intervals touch or overlap"


def gap_sign(c: RestrictedCylinder, p: int) -> GapOrder:
    allowed = admissible_digits(c.P.s, c.u)
    if p not in allowed or p + 1 not in allowed:
        raise InvalidNextDigit(f"p={p} and p+1 must both lie in {allowed}")
    left = ru_cyl_bounds(c.child(p))
    right = ru_cyl_bounds(c.child(p + 1))
    if left.hi < right.lo:
        return GapOrder.INCREASING
    if left.lo > right.hi:
        return GapOrder.DECREASING
    return GapOrder.OVERLAP
