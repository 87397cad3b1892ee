"""Sampling the random s-adic number with i.i.d. digits, and a KS check of f."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import ValidationError
from .numrep import ProbVector, integer_weights


@dataclass(frozen=True)
class SampleBatch:
    """Truncated realizations sum_{k<=depth} xi_k / s^k stored as digit rows.

    ``numerators[i] / s**depth`` is sample i exactly.
    """

    P: ProbVector
    depth: int
    seed: int
    digits: np.ndarray = field(repr=False)
    numerators: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.numerators)

    @property
    def denominator(self) -> int:
        return self.P.s**self.depth

    @property
    def values(self) -> list:
        den = self.denominator
        return [Fraction(num, den) for num in self.numerators]

    def floats(self) -> np.ndarray:
        den = self.denominator
        return np.array([num / den for num in self.numerators], dtype=np.float64)


def _chunk_len(s: int) -> int:
    k = 1
    while s ** (k + 1) < 2**63:
        k += 1
    return k


def _pack(digits: np.ndarray, s: int) -> list:
    """Row-wise base-s integers of a digit matrix, exact for any depth."""
    n, depth = digits.shape
    step = _chunk_len(s)
    total = np.zeros(n, dtype=object)
    for start in range(0, depth, step):
        block = digits[:, start : start + step].astype(np.int64)
        width = block.shape[1]
        powers = np.array([s ** (width - 1 - j) for j in range(width)], dtype=np.int64)
        chunk = block @ powers
        total = total * (s**width) + chunk.astype(object)
    return [int(v) for v in total]


def sample_eta(P: ProbVector, depth: int, n: int, seed: int = 0) -> SampleBatch:
    if n < 1 or depth < 1:
        raise ValidationError(f"need n >= 1 and depth >= 1, got n={n}, depth={depth}")
    digits = kernels.draw_digits(seed, n, depth, kernels.beta_thresholds(P.beta))
    return SampleBatch(P, depth, seed, digits, tuple(_pack(digits, P.s)))


def f_numerators(digits: np.ndarray, P: ProbVector) -> tuple[list, int]:
    """Exact f at each digit row, returned as integer numerators over D^depth.

    f of a finite word is sum beta_{d_k} prod_{j<k} p_{d_j}; with p = a/D and
    beta = b/D the numerator obeys N_k = N_{k-1} D + b[d_k] A_{k-1},
    A_k = A_{k-1} a[d_k].
    """
    D, a, b = integer_weights(P)
    a_obj = np.array(a, dtype=object)
    b_obj = np.array(b, dtype=object)
    n, depth = digits.shape
    num = np.zeros(n, dtype=object)
    acc = np.ones(n, dtype=object)
    for k in range(depth):
        col = digits[:, k]
        num = num * D + b_obj[col] * acc
        acc = acc * a_obj[col]
    return [int(v) for v in num], D**depth


def ks_distance(batch: SampleBatch) -> float:
    """Two-sided sup distance between the sample ECDF and f."""
    nums, den = f_numerators(batch.digits, batch.P)
    order = sorted(range(batch.n), key=batch.numerators.__getitem__)
    f_vals = np.array([nums[i] / den for i in order], dtype=np.float64)
    return kernels.ks_sup(f_vals)


def ks_critical(n: int) -> float:
    """Asymptotic 5% critical value of the two-sided KS statistic."""
    return 1.36 / math.sqrt(n)
