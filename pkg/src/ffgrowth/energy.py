"""Additive and mixed energies via representation-function histograms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sets import FSet, ratio_set, square_set, sumset


@dataclass(frozen=True)
class RepHistogram:
    """counts[t] = number of representations of field element t."""

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.counts)

    def as_dict(self) -> dict[int, int]:
        s = self.support
        return dict(zip(s.tolist(), self.counts[s].tolist()))

    def energy(self) -> int:
        c = self.counts
        if self.total > 3_000_000_000:  # sum of squares could overflow int64
            c = c.astype(object)
        return int(np.dot(c, c))


@dataclass(frozen=True)
class EnergyReport:
    kind: str
    value: int
    histogram: RepHistogram
    operands: tuple[str, ...]


def _describe(S: FSet, name: str) -> str:
    return f"{name}(|{name}|={len(S)})"


def _weighted_sum_histogram(F, xs, wx, ys, wy) -> np.ndarray:
    """Histogram of x + y over two weighted multisets."""
    out = np.zeros(F.q, dtype=np.int64)
    if len(xs) == 0 or len(ys) == 0:
        return out
    sums = F.add(np.asarray(xs)[:, None], np.asarray(ys)[None, :]).ravel()
    w = (np.asarray(wx, dtype=np.int64)[:, None] * np.asarray(wy, dtype=np.int64)[None, :]).ravel()
    np.add.at(out, sums, w)
    return out


def sum_histogram(X: FSet, Y: FSet) -> RepHistogram:
    """r(s) = #{(x, y) in X x Y : x + y = s}."""
    X._check(Y)
    F = X.field
    ones_x = np.ones(len(X), dtype=np.int64)
    ones_y = np.ones(len(Y), dtype=np.int64)
    return RepHistogram(_weighted_sum_histogram(F, X.elements, ones_x, Y.elements, ones_y))


def additive_energy(X: FSet, Y: FSet) -> EnergyReport:
    """E+(X, Y) = #{x1 + y1 = x2 + y2} = sum_s r(s)^2."""
    h = sum_histogram(X, Y)
    return EnergyReport("additive", h.energy(), h, (_describe(X, "X"), _describe(Y, "Y")))


def dilate_energy(A: FSet, r: int) -> int:
    """#{(a1, a2, b1, b2) in A^4 : a1 + r b1 = a2 + r b2}.

    rA is taken as a multiset indexed by b in A, so r = 0 contributes |A|^3.
    """
    F = A.field
    scaled = F.mul(int(r), A.elements)
    vals, mult = np.unique(scaled, return_counts=True)
    h = _weighted_sum_histogram(F, A.elements, np.ones(len(A), dtype=np.int64), vals, mult)
    return int(np.dot(h, h))


def mixed_histogram(A: FSet, B: FSet) -> RepHistogram:
    """v(t) = #{(a1, a2, b1) in A x A x B : a1^2 + (a2 - b1)^2 = t}."""
    A._check(B)
    F = A.field
    if not A or not B:
        return RepHistogram(np.zeros(F.q, dtype=np.int64))
    sq_a, mult_a = np.unique(F.square(A.elements), return_counts=True)
    diffs = F.square(F.sub(A.elements[:, None], B.elements[None, :])).ravel()
    sq_d, mult_d = np.unique(diffs, return_counts=True)
    return RepHistogram(_weighted_sum_histogram(F, sq_a, mult_a, sq_d, mult_d))


def mixed_energy(A: FSet, B: FSet) -> EnergyReport:
    """E(A^2, (A-B)^2): 6-tuples with a1^2 + (a2-b1)^2 = a3^2 + (a4-b2)^2."""
    h = mixed_histogram(A, B)
    return EnergyReport("mixed", h.energy(), h, (_describe(A, "A"), _describe(B, "B")))


@dataclass(frozen=True)
class RatioEnergySum:
    total: int
    bound: int
    witness_r: int
    witness_energy: int
    ratio_count: int
    energies: dict

    @property
    def holds(self) -> bool:
        return self.total <= self.bound

    @property
    def pigeonhole_holds(self) -> bool:
        return self.witness_energy * self.ratio_count <= self.total


def energy_sum_over_ratios(A: FSet) -> RatioEnergySum:
    """Sum over r in R(A, A) of E+(A, rA) against |R||A|^2 + |A|^4.

    The witness is the r of least energy (smallest index on ties).
    """
    R = ratio_set(A, A)
    n = len(A)
    energies = {r: dilate_energy(A, r) for r in R.to_list()}
    witness = min(energies, key=lambda r: (energies[r], r))
    total = sum(energies.values())
    bound = len(R) * n**2 + n**4
    return RatioEnergySum(total, bound, witness, energies[witness], len(R), energies)


@dataclass(frozen=True)
class CSGrowthReport:
    n: int
    size_b: int
    size_sq_sum: int
    energy: int
    lhs: int
    rhs: int
    epsilon: float | None

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def cs_growth_check(A: FSet) -> CSGrowthReport:
    """|A|^6 <= |A^2 + A^2| * E(A^2, (A-B)^2) with B = A + A.

    ``epsilon`` solves E = |A|^(3-eps) |B|^2 (log base |A|) and is reported
    only when E < |A|^3 |B|^2 and |A| >= 2.
    """
    B = sumset(A, A)
    sq = square_set(A)
    n, nb = len(A), len(B)
    size_sq_sum = len(sumset(sq, sq))
    E = mixed_energy(A, B).value
    eps = None
    if n >= 2 and 0 < E < n**3 * nb**2:
        eps = 3.0 - math.log(E / nb**2) / math.log(n)
    return CSGrowthReport(n, nb, size_sq_sum, E, n**6, size_sq_sum * E, eps)
