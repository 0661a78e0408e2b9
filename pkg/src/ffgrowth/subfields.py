"""Subfield lattice via Frobenius fixed points, and generated subfields."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import EmptySet, InternalInvariantViolation
from .field import FieldTable, divisors
from .sets import FSet, inverse_set, product_set, sumset

CLOSURE_CHECK_LIMIT = 1024


@dataclass(frozen=True)
class Subfield:
    d: int
    elements: FSet

    @property
    def label(self) -> tuple[int, int]:
        return (self.elements.field.p, self.d)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        p, d = self.label
        return f"F_{p}" if d == 1 else f"F_{p}^{d}"


def frobenius_power_table(F: FieldTable, d: int) -> np.ndarray:
    """x -> x^(p^d) as a length-q table."""
    t = np.arange(F.q, dtype=np.int64)
    for _ in range(d):
        t = F.frob[t]
    return t


def subfield(F: FieldTable, d: int) -> Subfield:
    if F.k % d:
        raise ValueError(f"{d} does not divide {F.k}")
    fixed = frobenius_power_table(F, d) == np.arange(F.q)
    return Subfield(d, FSet.from_mask(F, fixed))


def subfield_lattice(F: FieldTable) -> list[Subfield]:
    """One subfield per divisor d of k, ascending in d."""
    return [subfield(F, d) for d in divisors(F.k)]


def element_degrees(F: FieldTable, xs) -> np.ndarray:
    """Smallest d >= 1 with frob^d(x) = x, elementwise."""
    xs = np.asarray(xs, dtype=np.int64)
    deg = np.zeros(xs.shape, dtype=np.int64)
    cur = xs
    for d in range(1, F.k + 1):
        cur = F.frob[cur]
        deg = np.where((deg == 0) & (cur == xs), d, deg)
    return deg


def element_degree(F: FieldTable, x: int) -> int:
    return int(element_degrees(F, [int(x)])[0])


def generated_subfield_closure(B: FSet) -> Subfield:
    """Close B ∪ {0, 1} under +, ·, and inversion until it stops growing."""
    F = B.field
    if not B:
        raise EmptySet("generated_subfield needs a nonempty set")
    S = B | FSet(F, [0, 1])
    while True:
        nxt = S | sumset(S, S) | product_set(S, S) | inverse_set(S)
        if nxt == S:
            break
        S = nxt
    d = round(math.log(len(S), F.p))
    if F.p**d != len(S):
        raise InternalInvariantViolation(f"closure of size {len(S)} is not a subfield")
    return Subfield(d, S)


def generated_subfield(B: FSet, check: bool | None = None) -> Subfield:
    """Smallest subfield containing B: F_{p^d} with d the lcm of element degrees.

    With ``check`` (default: on for q <= CLOSURE_CHECK_LIMIT) the answer is
    cross-checked against the closure iteration.
    """
    F = B.field
    if not B:
        raise EmptySet("generated_subfield needs a nonempty set")
    d = reduce(math.lcm, element_degrees(F, B.elements).tolist(), 1)
    result = subfield(F, d)
    if check is None:
        check = F.q <= CLOSURE_CHECK_LIMIT
    if check:
        other = generated_subfield_closure(B)
        if other != result:
            raise InternalInvariantViolation(
                f"degree method gives {result}, closure gives {other}")
    return result
