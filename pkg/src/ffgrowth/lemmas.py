"""Checkers and witness searches for the sumset/covering lemmas.

Constants hidden in the lemmas are measured and reported, never asserted.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BadEpsilon, EmptySet, EmptyX
from .sets import (FSet, difference_set, iterated_sumset, negate, square_set,
                   sumset, translate)

EXACT_LIMIT = 12
PROFILE_EPS = Fraction(1, 10)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def ceil_power(n: int, eps: Fraction) -> int:
    """Exact ceil(n ** eps) for n >= 1 and rational eps >= 0."""
    u, v = eps.numerator, eps.denominator
    if v > 1000:
        return math.ceil(n ** float(eps))
    target = n**u
    m = max(1, math.ceil(n ** float(eps)))
    while m**v < target:
        m += 1
    while m > 1 and (m - 1) ** v >= target:
        m -= 1
    return m


# Plünnecke-Ruzsa


@dataclass(frozen=True)
class PlunneckeReport:
    lhs: int
    rhs_num: int
    rhs_den: int
    sum_holds: bool
    diff_lhs: int | None = None
    diff_holds: bool | None = None

    @property
    def holds(self) -> bool:
        return self.sum_holds and self.diff_holds is not False


def plunnecke_check(X: FSet, Bs: list[FSet]) -> PlunneckeReport:
    """|B_1+...+B_k| |X|^(k-1) <= prod |X+B_i|, and for k = 2 also
    |B_1-B_2| |X| <= |X+B_1||X+B_2|.  Integer arithmetic throughout."""
    if not X:
        raise EmptyX("X must be nonempty")
    if not Bs:
        raise ValueError("need at least one B")
    k = len(Bs)
    lhs = len(iterated_sumset(Bs))
    sizes = [len(sumset(X, B)) for B in Bs]
    rhs_num = math.prod(sizes)
    rhs_den = len(X) ** (k - 1)
    diff_lhs = diff_holds = None
    if k == 2:
        diff_lhs = len(difference_set(Bs[0], Bs[1]))
        diff_holds = diff_lhs * len(X) <= rhs_num
    return PlunneckeReport(lhs, rhs_num, rhs_den, lhs * rhs_den <= rhs_num, diff_lhs, diff_holds)


# Large subset with small iterated sumset


@dataclass(frozen=True)
class KatzShenResult:
    witness: FSet
    sumset_size: int
    c_measured: Fraction
    rhs_num: int
    rhs_den: int
    method: str


def _sum_rep(F, xs: np.ndarray, S: FSet) -> np.ndarray:
    r = np.zeros(F.q, dtype=np.int64)
    if len(xs) and S:
        np.add.at(r, F.add(xs[:, None], S.elements[None, :]).ravel(), 1)
    return r


def katz_shen_search(X: FSet, Bs: list[FSet], eps, exact: bool = False) -> KatzShenResult:
    """Find X' ⊆ X, |X'| >= ceil((1-eps)|X|), with small |X' + B_1 + ... + B_k|.

    Greedy: repeatedly drop the element whose removal shrinks the sumset most
    (smallest index on ties).  ``exact=True`` scans every subset of the
    target size instead (|X| <= EXACT_LIMIT) and returns the
    lexicographically first minimizer.
    """
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise BadEpsilon(f"eps must lie in (0, 1), got {eps}")
    if not X:
        raise EmptyX("X must be nonempty")
    if not Bs:
        raise ValueError("need at least one B")
    F = X.field
    S = iterated_sumset(Bs)
    n = len(X)
    m = math.ceil((1 - eps) * n)
    rhs_num = math.prod(len(sumset(X, B)) for B in Bs)
    rhs_den = n ** (len(Bs) - 1)

    if exact:
        if n > EXACT_LIMIT:
            raise ValueError(f"exact search limited to |X| <= {EXACT_LIMIT}")
        best = None
        for combo in itertools.combinations(X.to_list(), m):
            size = int(np.count_nonzero(_sum_rep(F, np.array(combo, dtype=np.int64), S)))
            if best is None or size < best[0]:
                best = (size, combo)
        size, chosen = best
        witness = FSet(F, chosen)
        method = "exact"
    else:
        current = X.to_list()
        r = _sum_rep(F, X.elements, S)
        for _ in range(n - m):
            best_loss, best_x = -1, None
            for x in current:
                hits = F.add(x, S.elements)
                loss = int(np.count_nonzero(r[hits] == 1))
                if loss > best_loss:
                    best_loss, best_x = loss, x
            current.remove(best_x)
            r[F.add(best_x, S.elements)] -= 1
        size = int(np.count_nonzero(r))
        witness = FSet(F, current)
        method = "greedy"
    c = Fraction(size * rhs_den, rhs_num) if rhs_num else Fraction(0)
    return KatzShenResult(witness, size, c, rhs_num, rhs_den, method)


# Covering by translates


@dataclass(frozen=True)
class CoverResult:
    translates: list[int]
    covered: int
    size: int
    bound: Fraction

    @property
    def count(self) -> int:
        return len(self.translates)

    @property
    def covered_fraction(self) -> Fraction:
        return Fraction(self.covered, self.size)

    @property
    def ratio(self) -> Fraction:
        """count / bound, the empirical covering constant."""
        return Fraction(self.count) / self.bound


def _check_cover_args(X: FSet, Y: FSet, eps) -> Fraction:
    eps = as_fraction(eps)
    if not 0 <= eps < 1:
        raise BadEpsilon(f"eps must lie in [0, 1), got {eps}")
    if not X or not Y:
        raise EmptySet("covering needs nonempty X and Y")
    X._check(Y)
    return eps


def cover_bound(X: FSet, Y: FSet) -> Fraction:
    """min(|X+Y|, |X-Y|) / |Y|."""
    return Fraction(min(len(sumset(X, Y)), len(difference_set(X, Y))), len(Y))


def greedy_cover(X: FSet, Y: FSet, eps) -> CoverResult:
    """Cover at least (1-eps)|X| of X by translates t+Y, greedily.

    Each round picks the t with the most still-uncovered points of X in t+Y,
    smallest t on ties.
    """
    eps = _check_cover_args(X, Y, eps)
    F = X.field
    need = math.ceil((1 - eps) * len(X))
    uncovered = X.bits.copy()
    ye = Y.elements
    covered = 0
    translates = []
    while covered < need:
        U = np.flatnonzero(uncovered)
        gains = np.bincount(F.sub(U[:, None], ye[None, :]).ravel(), minlength=F.q)
        t = int(np.argmax(gains))
        hit = F.add(t, ye)
        newly = hit[uncovered[hit]]
        uncovered[newly] = False
        covered += newly.size
        translates.append(t)
    return CoverResult(translates, covered, len(X), cover_bound(X, Y))


def exact_cover(X: FSet, Y: FSet, eps) -> CoverResult:
    """Minimum number of translates of Y covering (1-eps)|X|, by exhaustive search."""
    eps = _check_cover_args(X, Y, eps)
    if len(X) > EXACT_LIMIT:
        raise ValueError(f"exact cover limited to |X| <= {EXACT_LIMIT}")
    F = X.field
    need = math.ceil((1 - eps) * len(X))
    pos = {x: i for i, x in enumerate(X.to_list())}
    masks: dict[int, int] = {}
    for t in difference_set(X, Y).to_list():
        mask = 0
        for h in F.add(t, Y.elements).tolist():
            if h in pos:
                mask |= 1 << pos[h]
        masks.setdefault(mask, t)
    cands = sorted((t, mask) for mask, t in masks.items())
    for c in range(1, len(X) + 1):
        for combo in itertools.combinations(cands, c):
            union = 0
            for _, mask in combo:
                union |= mask
            got = union.bit_count()
            if got >= need:
                return CoverResult([t for t, _ in combo], got, len(X), cover_bound(X, Y))
    raise AssertionError("X is always coverable")


# covering profile of squared translates


@dataclass(frozen=True)
class ProfileRow:
    kind: str  # "b": (A - b)^2 for b in B;  "a": (B - a)^2 for a in A
    element: int
    set_size: int
    count: int
    covered_fraction: Fraction
    own_threshold: int


@dataclass
class CoverProfile:
    n: int
    size_b: int
    eps: Fraction
    threshold: int
    rows: list[ProfileRow] = field(default_factory=list)

    def _select(self, kind: str, own: bool) -> list[int]:
        return [r.element for r in self.rows if r.kind == kind
                and r.count <= (r.own_threshold if own else self.threshold)]

    @property
    def y_star(self) -> list[int]:
        return self._select("b", own=False)

    @property
    def x_star(self) -> list[int]:
        return self._select("a", own=False)

    @property
    def y_star_own(self) -> list[int]:
        return self._select("b", own=True)

    @property
    def x_star_own(self) -> list[int]:
        return self._select("a", own=True)

    @property
    def y_ratio(self) -> float:
        return len(self.y_star) / self.size_b ** (1 - float(self.eps))

    @property
    def x_ratio(self) -> float:
        return len(self.x_star) / self.n ** (1 - float(self.eps))

    @property
    def min_covered_fraction(self) -> Fraction:
        return min((r.covered_fraction for r in self.rows), default=Fraction(1))


def lemma32_cover_profile(A: FSet, eps) -> CoverProfile:
    """Greedy 90% cover counts of (A-b)^2 (b in A+A) and (B-a)^2 (a in A) by
    translates of -A^2.

    Thresholds: ceil(|A|^eps), and per row ceil(|S|^eps) for the covered set S.
    """
    eps = as_fraction(eps)
    if not 0 <= eps <= 1:
        raise BadEpsilon(f"eps must lie in [0, 1], got {eps}")
    if len(A) < 2:
        raise ValueError("profile needs |A| >= 2")
    F = A.field
    B = sumset(A, A)
    target = negate(square_set(A))
    prof = CoverProfile(len(A), len(B), eps, ceil_power(len(A), eps))
    for kind, elems, base in (("b", B, A), ("a", A, B)):
        for x in elems.to_list():
            S = square_set(translate(int(F.neg(x)), base))
            cov = greedy_cover(S, target, PROFILE_EPS)
            prof.rows.append(ProfileRow(kind, x, len(S), cov.count, cov.covered_fraction,
                                        ceil_power(len(S), eps)))
    return prof
