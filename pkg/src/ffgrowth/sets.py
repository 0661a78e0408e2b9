"""Subsets of F_q as bit-vectors, and the set expressions built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .errors import DegenerateDenominator, FieldMismatch
from .field import FieldTable


class FSet:
    """Immutable subset of a finite field.

    Stored as a length-q boolean mask over element indices.  Operators follow
    additive-combinatorics notation: ``A + B`` is the sumset, ``A - B`` the
    difference set, ``A * B`` the product set; ``|`` and ``&`` are union
    and intersection.
    """

    __slots__ = ("field", "bits", "size", "_elements")

    def __init__(self, field: FieldTable, elements: Iterable[int] = ()):
        idx = np.fromiter((int(e) for e in elements), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= field.q):
            raise ValueError(f"element index out of range [0, {field.q})")
        bits = np.zeros(field.q, dtype=bool)
        bits[idx] = True
        self._init(field, bits)

    def _init(self, field: FieldTable, bits: np.ndarray) -> None:
        bits.setflags(write=False)
        self.field = field
        self.bits = bits
        self.size = int(np.count_nonzero(bits))
        self._elements = None

    @classmethod
    def from_mask(cls, field: FieldTable, bits: np.ndarray) -> "FSet":
        if bits.shape != (field.q,):
            raise ValueError("mask length must equal q")
        obj = cls.__new__(cls)
        obj._init(field, np.array(bits, dtype=bool))
        return obj

    @classmethod
    def from_indices(cls, field: FieldTable, idx) -> "FSet":
        bits = np.zeros(field.q, dtype=bool)
        bits[np.asarray(idx, dtype=np.int64).ravel()] = True
        obj = cls.__new__(cls)
        obj._init(field, bits)
        return obj

    @classmethod
    def full(cls, field: FieldTable) -> "FSet":
        return cls.from_mask(field, np.ones(field.q, dtype=bool))

    @classmethod
    def empty(cls, field: FieldTable) -> "FSet":
        return cls.from_mask(field, np.zeros(field.q, dtype=bool))

    @property
    def elements(self) -> np.ndarray:
        """Sorted element indices."""
        if self._elements is None:
            e = np.flatnonzero(self.bits).astype(np.int64)
            e.setflags(write=False)
            self._elements = e
        return self._elements

    def to_list(self) -> list[int]:
        return self.elements.tolist()

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.elements.tolist())

    def __contains__(self, x) -> bool:
        x = int(x)
        return 0 <= x < self.field.q and bool(self.bits[x])

    def __bool__(self) -> bool:
        return self.size > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FSet):
            return NotImplemented
        return self.field.spec == other.field.spec and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.field.spec, np.packbits(self.bits).tobytes()))

    def __repr__(self) -> str:
        shown = self.to_list()
        if len(shown) > 12:
            shown = shown[:12] + ["..."]
        return f"FSet(q={self.field.q}, size={self.size}, {shown})"

    def _check(self, other: "FSet") -> None:
        if self.field.spec != other.field.spec:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __or__(self, other: "FSet") -> "FSet":
        self._check(other)
        return FSet.from_mask(self.field, self.bits | other.bits)

    def __and__(self, other: "FSet") -> "FSet":
        self._check(other)
        return FSet.from_mask(self.field, self.bits & other.bits)

    def without(self, other: "FSet") -> "FSet":
        self._check(other)
        return FSet.from_mask(self.field, self.bits & ~other.bits)

    def complement(self) -> "FSet":
        return FSet.from_mask(self.field, ~self.bits)

    def issubset(self, other: "FSet") -> bool:
        self._check(other)
        return not np.any(self.bits & ~other.bits)

    __le__ = issubset

    def __add__(self, other: "FSet") -> "FSet":
        return sumset(self, other)

    def __sub__(self, other: "FSet") -> "FSet":
        return difference_set(self, other)

    def __mul__(self, other: "FSet") -> "FSet":
        return product_set(self, other)


def _pairwise(op, A: FSet, B: FSet) -> FSet:
    A._check(B)
    F = A.field
    if not A or not B:
        return FSet.empty(F)
    return FSet.from_indices(F, op(A.elements[:, None], B.elements[None, :]))


def sumset(A: FSet, B: FSet) -> FSet:
    return _pairwise(A.field.add, A, B)


def difference_set(A: FSet, B: FSet) -> FSet:
    return _pairwise(A.field.sub, A, B)


def product_set(A: FSet, B: FSet) -> FSet:
    return _pairwise(A.field.mul, A, B)


def iterated_sumset(sets: list[FSet]) -> FSet:
    """B_1 + ... + B_k."""
    if not sets:
        raise ValueError("need at least one set")
    return reduce(sumset, sets)


def dilate(c: int, A: FSet) -> FSet:
    """cA; dilating a nonempty set by 0 gives {0}."""
    return FSet.from_indices(A.field, A.field.mul(int(c), A.elements))


def translate(t: int, A: FSet) -> FSet:
    return FSet.from_indices(A.field, A.field.add(int(t), A.elements))


def negate(A: FSet) -> FSet:
    return FSet.from_indices(A.field, A.field.neg(A.elements))


def square_set(A: FSet) -> FSet:
    """Image of A under x -> x^2 (not the product set A*A)."""
    return FSet.from_indices(A.field, A.field.square(A.elements))


def inverse_set(A: FSet) -> FSet:
    """{a^-1 : a in A, a != 0}; zero is dropped."""
    nz = A.elements[A.elements != 0]
    return FSet.from_indices(A.field, A.field.inv(nz))


def ratio_set(N: FSet, D: FSet) -> FSet:
    """{(n1 - n2)/(d1 - d2) : n_i in N, d_i in D, d1 != d2}.

    The quotient set depends only on N - N and (D - D) minus 0, so it is the
    product set of those two.
    """
    N._check(D)
    if len(D) < 2:
        raise DegenerateDenominator(f"denominator set needs >= 2 elements, has {len(D)}")
    F = N.field
    if not N:
        return FSet.empty(F)
    nums = difference_set(N, N)
    dens = inverse_set(difference_set(D, D))
    return product_set(nums, dens)


def distance_composite(A: FSet) -> FSet:
    """(A - A)^2 + (A - A)^2."""
    s = square_set(difference_set(A, A))
    return sumset(s, s)


def normalize(A: FSet) -> FSet:
    """Affine image of A containing 0 and 1.

    Uses the two smallest elements a0 < a1: x -> (x - a0)/(a1 - a0).
    Sets with fewer than two elements are returned unchanged.
    """
    if len(A) < 2:
        return A
    F = A.field
    a0, a1 = int(A.elements[0]), int(A.elements[1])
    scale = F.inv(F.sub(a1, a0))
    return FSet.from_indices(F, F.mul(F.sub(A.elements, a0), scale))


# Closure classification of the ratio set


@dataclass(frozen=True)
class CaseLabel:
    """Outcome of the closure trichotomy.

    ``case`` is 1..4.  For cases 1-3, ``r`` is an element of the tested
    set that lies outside the ratio set R, written as
    ``r = shift + scale * (n1 - n2)/(d1 - d2)`` with ``witness`` holding
    ``(n1, n2, b, d1, d2)``: case 1 has shift 1, scale 1, b None; case 2 has
    scale b; case 3 has scale b^-1.
    """

    case: int
    r: int | None = None
    witness: tuple | None = None

    @property
    def label(self) -> str:
        return f"Case{self.case}"

    def __str__(self) -> str:
        return self.label


def _ratio_witness(F: FieldTable, rho: int, N: FSet, D: FSet) -> tuple[int, int, int, int]:
    # find n1, n2, d1, d2 with n1 - n2 = rho * (d1 - d2), d1 != d2
    nmask = N.bits
    ne = N.elements
    for d1 in D.elements.tolist():
        for d2 in D.elements.tolist():
            if d1 == d2:
                continue
            diff = int(F.mul(rho, F.sub(d1, d2)))
            # n1 = n2 + diff
            n1s = F.add(ne, diff)
            hit = np.flatnonzero(nmask[n1s])
            if hit.size:
                n2 = int(ne[hit[0]])
                return int(n1s[hit[0]]), n2, d1, d2
    raise AssertionError(f"{rho} is not a ratio")


def _classify(N: FSet, D: FSet, S: FSet) -> CaseLabel:
    F = N.field
    R = ratio_set(N, D)
    missing = translate(1, R).without(R)
    if missing:
        r = int(missing.elements[0])
        rho = int(F.sub(r, 1))
        n1, n2, d1, d2 = _ratio_witness(F, rho, N, D)
        return CaseLabel(1, r, (n1, n2, None, d1, d2))
    for case, scales in ((2, S), (3, inverse_set(S))):
        for s in scales.elements.tolist():
            out = dilate(s, R).without(R)
            if out:
                r = int(out.elements[0])
                rho = int(F.div(r, s))
                n1, n2, d1, d2 = _ratio_witness(F, rho, N, D)
                b = s if case == 2 else int(F.inv(s))
                return CaseLabel(case, r, (n1, n2, b, d1, d2))
    return CaseLabel(4)


def classify_case(A: FSet) -> CaseLabel:
    """Tests 1+R ⊆ R, A·R ⊆ R, A^-1·R ⊆ R for R = R(A, A), in that order."""
    return _classify(A, A, A)


def classify_case_xy(X: FSet, Y: FSet) -> CaseLabel:
    """Variant over R(X, Y) = {(b1-b2)/(a1-a2) : a in X, b in Y}; scales come from Y."""
    return _classify(Y, X, Y)


def verify_case_witness(label: CaseLabel, N: FSet, D: FSet) -> bool:
    """Check a witness by direct arithmetic and membership.

    Pass ``(A, A)`` for ``classify_case(A)`` and ``(Y, X)`` for
    ``classify_case_xy(X, Y)``.
    """
    if label.case == 4:
        return label.r is None
    F = N.field
    n1, n2, b, d1, d2 = label.witness
    if n1 not in N or n2 not in N or d1 not in D or d2 not in D or d1 == d2:
        return False
    if label.case in (2, 3) and (b is None or b not in N or b == 0):
        return False
    rho = int(F.div(F.sub(n1, n2), F.sub(d1, d2)))
    if label.case == 1:
        expected = int(F.add(1, rho))
    elif label.case == 2:
        expected = int(F.mul(b, rho))
    else:
        expected = int(F.div(rho, b))
    return expected == label.r and label.r not in ratio_set(N, D)
