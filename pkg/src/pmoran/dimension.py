"""Hausdorff dimension solvers for Moran-type equations, plus empirical checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DegenerateCover, EmptyRatios, InvalidCounts, RatioOutOfRange, ValidationError
from .fractal_sets import CombinationAlphabet, CoverLevel, SuSetSpec

DEFAULT_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class RatioSet:
    ratios: tuple
    tag: str = "moran"

    def __post_init__(self):
        if not self.ratios:
            raise EmptyRatios("at least one contraction ratio is required")
        rs = tuple(float(r) for r in self.ratios)
        for r in rs:
            if not 0.0 < r < 1.0:
                raise RatioOutOfRange(f"ratio {r} not in (0, 1)")
        object.__setattr__(self, "ratios", rs)


@dataclass(frozen=True)
class DimensionResult:
    alpha0: float
    residual: float
    iterations: int
    bracket: tuple
    degenerate: bool = False


def moran_sum(ratios, alpha: float) -> float:
    return math.fsum(r**alpha for r in ratios)


def solve_moran(rs: RatioSet, tol: float = DEFAULT_TOL) -> DimensionResult:
    """Root of sum r_i^a = 1 by bisection on the decreasing map a -> sum r_i^a."""
    if tol <= 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")
    ratios = rs.ratios
    if len(ratios) == 1:
        return DimensionResult(0.0, 0.0, 0, (0.0, 0.0), degenerate=True)

    grid = [moran_sum(ratios, a) for a in np.linspace(0.0, 2.0, 9)]
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("ratio sum is not strictly decreasing")

    lo, hi = 0.0, 1.0
    while moran_sum(ratios, hi) >= 1.0:
        lo, hi = hi, 2.0 * hi
    it = 0
    while it < MAX_ITER:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        it += 1
        if moran_sum(ratios, mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol and abs(moran_sum(ratios, 0.5 * (lo + hi)) - 1.0) <= tol:
            break
    alpha = 0.5 * (lo + hi)
    return DimensionResult(alpha, abs(moran_sum(ratios, alpha) - 1.0), it, (lo, hi))


def su_ratios(spec: SuSetSpec) -> RatioSet:
    p, pu = spec.P.p, spec.P.p[spec.u]
    return RatioSet(tuple(p[i] * pu ** (i - 1) for i in spec.digits), "su")


def dim_su(spec: SuSetSpec, tol: float = DEFAULT_TOL) -> DimensionResult:
    res = solve_moran(su_ratios(spec), tol)
    if spec.degenerate and not res.degenerate:
        res = DimensionResult(res.alpha0, res.residual, res.iterations, res.bracket, True)
    return res


def dim_thm1(s: int, u: int, tol: float = DEFAULT_TOL) -> DimensionResult:
    """Dimension of the s-adic restricted set: sum over p != u of s^(-p a) = 1."""
    if s < 3:
        raise ValidationError(f"s must be >= 3, got {s}")
    if not 0 <= u < s:
        raise ValidationError(f"u={u} outside [0, {s - 1}]")
    return solve_moran(RatioSet(tuple(Fraction(1, s**p) for p in range(1, s) if p != u), "thm1"), tol)


def dim_thm2(s: int, counts, tol: float = DEFAULT_TOL) -> DimensionResult:
    """Solve sum_k N_k y^k = 1 for y = s^(-a); ``counts`` maps length k to N_k."""
    items = sorted(dict(counts).items())
    if s < 2 or any(k < 1 or n < 0 for k, n in items) or sum(n for _, n in items) < 1:
        raise InvalidCounts(f"invalid combination counts {items} for s={s}")
    items = [(k, n) for k, n in items if n > 0]

    def poly(y):
        return math.fsum(n * y**k for k, n in items)

    if sum(n for _, n in items) == 1:
        return DimensionResult(0.0, 0.0, 0, (0.0, 0.0), degenerate=True)
    y_lo, y_hi = 0.0, 1.0
    it = 0
    while it < MAX_ITER:
        mid = 0.5 * (y_lo + y_hi)
        if mid <= y_lo or mid >= y_hi:
            break
        it += 1
        if poly(mid) < 1.0:
            y_lo = mid
        else:
            y_hi = mid
        if y_hi - y_lo <= tol * mid and abs(poly(mid) - 1.0) <= tol:
            break
    y = 0.5 * (y_lo + y_hi)
    ln_s = math.log(s)
    alpha = -math.log(y) / ln_s
    bracket = (-math.log(y_hi) / ln_s, -math.log(y_lo) / ln_s)
    return DimensionResult(alpha, abs(poly(y) - 1.0), it, bracket)


def combo_ratios(xi: CombinationAlphabet) -> RatioSet:
    return RatioSet(tuple(xi.ratio(j) for j in range(xi.m)), "combo")


def dim_combo(xi: CombinationAlphabet, tol: float = DEFAULT_TOL) -> DimensionResult:
    return solve_moran(combo_ratios(xi), tol)


def cover_sum(cover: CoverLevel, alpha: float, d_total) -> float:
    """Sum of (length / d_total)^alpha over the cover's intervals."""
    d_total = Fraction(d_total)
    if d_total <= 0:
        raise ValidationError("d_total must be positive")
    x = np.array([float(length / d_total) for length in cover.lengths()], dtype=np.float64)
    return kernels.power_sum(x, alpha)


def box_dim_estimate(cover: CoverLevel, grid_base: int, levels) -> float:
    """Least-squares box-counting slope over grid widths grid_base^-l.

    Cells are half-open ``[j w, (j+1) w)`` except the last, which also holds
    1; cell indices are found with exact integer arithmetic.
    """
    if grid_base < 2:
        raise ValidationError(f"grid_base must be >= 2, got {grid_base}")
    levels = list(levels)
    if len(levels) < 2:
        raise DegenerateCover("need at least two grid levels to fit a slope")
    if not cover.intervals:
        raise DegenerateCover("cover has no intervals")
    lows = [iv.lo for _, iv in cover.intervals]
    highs = [iv.hi for _, iv in cover.intervals]
    counts = []
    for lev in levels:
        scale = grid_base**lev
        if scale >= 2**62:
            raise ValidationError(f"grid level {lev} too fine for 64-bit cell indices")
        lo_idx = np.array([min(x.numerator * scale // x.denominator, scale - 1) for x in lows], np.int64)
        hi_idx = np.array([min(x.numerator * scale // x.denominator, scale - 1) for x in highs], np.int64)
        counts.append(kernels.count_cells(lo_idx, hi_idx))
    xs = np.array(levels, dtype=np.float64) * math.log(grid_base)
    ys = np.log(np.array(counts, dtype=np.float64))
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def uniform_counts(xi: CombinationAlphabet) -> dict:
    """Number of combinations of each length, the input dim_thm2 expects."""
    out: dict = {}
    for w in xi.combos:
        out[len(w)] = out.get(len(w), 0) + 1
    return out
