"""Digit codecs for s-adic, nega-s-adic and P-representations of numbers.

All values are exact ``fractions.Fraction`` instances. Digit words are
plain tuples of ints; periodic digit streams are ``EventuallyPeriodicSeq``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    BaseMismatch,
    InvalidDigit,
    NonPositiveEntry,
    OutOfRange,
    SumNotOne,
    ValidationError,
    WrongLength,
)

Rational = Fraction
DigitWord = tuple

DEFAULT_DEPTH = 64


def as_rational(value) -> Fraction:
    """Coerce ``"a/b"`` strings, ints and Fractions to a Fraction.

    Floats are refused: they would silently smuggle binary rounding into
    exact computations.
    """
    if isinstance(value, float):
        raise ValidationError(f"refusing float {value!r}; pass an exact rational")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {value!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def check_digits(digits: Iterable[int], s: int) -> tuple:
    word = tuple(int(d) for d in digits)
    for d in word:
        if not 0 <= d < s:
            raise InvalidDigit(f"digit {d} outside [0, {s - 1}]")
    return word


def parse_digits(text: str) -> tuple:
    """Parse ``"1 0 2"``, ``"1,0,2"`` or ``"102"`` into a digit tuple."""
    text = text.strip()
    if not text:
        return ()
    if re.search(r"[\s,]", text):
        return tuple(int(t) for t in re.split(r"[\s,]+", text) if t)
    return tuple(int(ch) for ch in text)


def format_digits(digits: Sequence[int]) -> str:
    return " ".join(str(d) for d in digits)


def _minimal_period(period: tuple) -> tuple:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    """Digit stream ``preperiod`` followed by ``period`` repeated forever.

    Stored in canonical form: minimal period, and the preperiod does not end
    with the digit that closes the period (that digit is rotated into the
    period instead).
    """

    base: int
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if self.base < 2:
            raise ValidationError(f"base must be >= 2, got {self.base}")
        pre = check_digits(self.preperiod, self.base)
        per = check_digits(self.period, self.base)
        if not per:
            raise ValidationError("period must be nonempty")
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str, base: int) -> "EventuallyPeriodicSeq":
        """Parse ``"102(21)"``; a missing period means a zero tail."""
        m = re.fullmatch(r"\s*([^()]*)(?:\(([^()]*)\))?\s*", text)
        if m is None:
            raise ValidationError(f"cannot parse periodic digit string {text!r}")
        pre = parse_digits(m.group(1))
        per = parse_digits(m.group(2)) if m.group(2) is not None else (0,)
        return cls(base, pre, per)

    @classmethod
    def finite(cls, digits: Sequence[int], base: int) -> "EventuallyPeriodicSeq":
        return cls(base, tuple(digits), (0,))

    def digits(self, n: int) -> tuple:
        """First ``n`` digits of the stream."""
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])

    def __str__(self):
        sep = "" if self.base <= 10 else " "
        pre = sep.join(map(str, self.preperiod))
        per = sep.join(map(str, self.period))
        return f"{pre}({per})"


@dataclass(frozen=True)
class ProbVector:
    """Digit probabilities p_0..p_{s-1} together with their cumulative sums."""

    s: int
    p: tuple
    beta: tuple

    @classmethod
    def uniform(cls, s: int) -> "ProbVector":
        return validate_prob_vector(s, [Fraction(1, s)] * s)

    @classmethod
    def parse(cls, text: str, s: int | None = None) -> "ProbVector":
        raw = [t for t in re.split(r"[\s,]+", text.strip()) if t]
        return validate_prob_vector(len(raw) if s is None else s, raw)

    def __str__(self):
        return ",".join(format_rational(q) for q in self.p)


def validate_prob_vector(s: int, raw: Sequence) -> ProbVector:
    if len(raw) != s:
        raise WrongLength(s, len(raw))
    p = tuple(as_rational(r) for r in raw)
    for i, q in enumerate(p):
        if q <= 0:
            raise NonPositiveEntry(i, q)
    if sum(p) != 1:
        raise SumNotOne(sum(p))
    beta = [Fraction(0)]
    for q in p[:-1]:
        beta.append(beta[-1] + q)
    return ProbVector(s, p, tuple(beta))


def _radix_series(seq: EventuallyPeriodicSeq, radix: int) -> Fraction:
    # sum of a_n / radix^n with the period closed as a geometric series
    def word_value(word):
        v = 0
        for d in word:
            v = v * radix + d
        return v

    m, k = len(seq.preperiod), len(seq.period)
    pre = Fraction(word_value(seq.preperiod), radix**m)
    tail = Fraction(word_value(seq.period), radix**k - 1)
    return pre + tail / Fraction(radix) ** m


def decode_sadic(seq: EventuallyPeriodicSeq) -> Fraction:
    return _radix_series(seq, seq.base)


def decode_negasadic(seq: EventuallyPeriodicSeq) -> Fraction:
    return _radix_series(seq, -seq.base)


def p_word(digits: Sequence[int], P: ProbVector) -> tuple[Fraction, Fraction]:
    """Return (partial sum, product of p) contributed by a finite digit word.

    Any stream starting with ``digits`` and continuing with tail ``t``
    decodes to ``value + weight * decode_P(t)``.
    """
    value, weight = Fraction(0), Fraction(1)
    for d in digits:
        value += P.beta[d] * weight
        weight *= P.p[d]
    return value, weight


def decode_P(seq: EventuallyPeriodicSeq, P: ProbVector) -> Fraction:
    if seq.base != P.s:
        raise BaseMismatch(f"sequence base {seq.base} != probability base {P.s}")
    v_pre, w_pre = p_word(seq.preperiod, P)
    v_per, w_per = p_word(seq.period, P)
    return v_pre + w_pre * v_per / (1 - w_per)


def _check_unit(x: Fraction, closed: bool = True) -> Fraction:
    x = as_rational(x)
    if closed and not 0 <= x <= 1:
        raise OutOfRange(f"{x} not in [0, 1]")
    if not closed and not 0 < x < 1:
        raise OutOfRange(f"{x} not in (0, 1)")
    return x


def encode_sadic(x, s: int, depth: int) -> tuple[tuple, bool]:
    """First ``depth`` digits of the terminating-preferred expansion of x."""
    x = _check_unit(x)
    if x == 1:
        return (s - 1,) * depth, False
    r, den = x.numerator, x.denominator
    digits = []
    for _ in range(depth):
        d, r = divmod(r * s, den)
        digits.append(d)
    return tuple(digits), r == 0


def periodic_sadic(x, s: int, max_digits: int) -> EventuallyPeriodicSeq | None:
    """Expansion of a rational x in [0, 1) as a periodic stream.

    Returns None when preperiod plus period would need more than
    ``max_digits`` digits.
    """
    x = as_rational(x)
    r, den = x.numerator, x.denominator
    seen: dict[int, int] = {}
    digits: list[int] = []
    for _ in range(max_digits + 1):
        if r in seen:
            i = seen[r]
            return EventuallyPeriodicSeq(s, tuple(digits[:i]), tuple(digits[i:]))
        if len(digits) == max_digits:
            break
        seen[r] = len(digits)
        d, r = divmod(r * s, den)
        digits.append(d)
    return None


def is_sadic_terminating(x, s: int) -> bool:
    """True iff every prime factor of x's denominator divides s."""
    rest = as_rational(x).denominator
    while rest != 1:
        g = gcd(rest, s)
        if g == 1:
            return False
        rest //= g
    return True


def dual_sadic_forms(x, s: int):
    """Both expansions ``w(0)`` and ``w'[d-1]([s-1])`` of a terminating x, else None."""
    x = _check_unit(x, closed=False)
    if not is_sadic_terminating(x, s):
        return None
    n = 0
    while (x * s**n).denominator != 1:
        n += 1
    digits, _ = encode_sadic(x, s, n)
    zero_tail = EventuallyPeriodicSeq(s, digits, (0,))
    top_tail = EventuallyPeriodicSeq(s, digits[:-1] + (digits[-1] - 1,), (s - 1,))
    return zero_tail, top_tail


def eval_f(x, P: ProbVector, depth: int = DEFAULT_DEPTH) -> tuple[Fraction, Fraction]:
    """Distribution function of the random s-adic number with digit law P.

    Returns ``(value, tail_bound)``. When the s-adic expansion of x closes
    into a cycle within ``depth`` digits the value is exact and the bound is
    0; otherwise the value is the depth-truncated series and the true f(x)
    lies in ``[value, value + tail_bound]``.
    """
    x = _check_unit(x)
    if x == 1:
        return Fraction(1), Fraction(0)
    seq = periodic_sadic(x, P.s, depth)
    if seq is not None:
        return decode_P(seq, P), Fraction(0)
    digits, _ = encode_sadic(x, P.s, depth)
    return p_word(digits, P)


def invert_f(y, P: ProbVector, depth: int) -> tuple:
    """Digits of a P-cylinder of rank ``depth`` containing y (greedy, larger digit on ties)."""
    y = _check_unit(y)
    value, weight = Fraction(0), Fraction(1)
    digits = []
    for _ in range(depth):
        d = P.s - 1
        while value + P.beta[d] * weight > y:
            d -= 1
        digits.append(d)
        value += P.beta[d] * weight
        weight *= P.p[d]
    return tuple(digits)


def integer_weights(P: ProbVector) -> tuple[int, list[int], list[int]]:
    """Common denominator D with integer numerators of p and beta over D."""
    D = lcm(*(q.denominator for q in P.p))
    a = [int(q * D) for q in P.p]
    b = [int(q * D) for q in P.beta]
    return D, a, b
