"""Subfield-avoidance hypotheses of the two growth theorems.

Theorem-1 hypothesis: |A ∩ aG|^2 <= |G| for every subfield G and a != 0.
Theorem-2 hypothesis: |(A+A) ∩ (aG + b)|^2 <= |G| for every G, a != 0, b.

Comparisons are done on squared integer counts.  Dilates aG are enumerated
once per coset of G* in F_q*: a nonzero element x lies in the coset labelled
log(x) mod (q-1)/(|G|-1), and each coset is reported through its smallest
element index.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .field import FieldTable
from .sets import FSet, sumset
from .subfields import Subfield, subfield_lattice

_BLOCK = 1 << 22


@dataclass(frozen=True)
class Violation:
    subfield: Subfield
    a: int
    b: int
    count: int

    def describe(self) -> str:
        return (f"G={self.subfield} (|G|={self.subfield.size}), a={self.a}, b={self.b}: "
                f"{self.count}^2 > {self.subfield.size}")


@dataclass(frozen=True)
class HypothesisReport:
    theorem: int
    passed: bool
    violation: Violation | None = None
    checked: int = 0
    max_ratio: float = 0.0
    subfields: list = field(default_factory=list)


def _coset_data(F: FieldTable, G: Subfield):
    m = (F.q - 1) // (G.size - 1)
    nz = np.arange(1, F.q, dtype=np.int64)
    labels = np.zeros(F.q, dtype=np.int64)
    labels[1:] = F.log[nz] % m
    reps = np.full(m, F.q, dtype=np.int64)
    np.minimum.at(reps, labels[1:], nz)
    return m, labels, reps


def _counts(F: FieldTable, S: FSet, G: Subfield, shifts: np.ndarray):
    """counts[i, c] = |(S - shifts[i]) ∩ (coset c ∪ {0})|."""
    m, labels, reps = _coset_data(F, G)
    out = np.zeros((shifts.size, m), dtype=np.int64)
    if not S:
        return out, reps
    step = max(1, _BLOCK // max(S.size, m))
    for lo in range(0, shifts.size, step):
        sh = shifts[lo:lo + step]
        diff = F.sub(S.elements[None, :], sh[:, None])
        rows = np.broadcast_to(np.arange(sh.size)[:, None], diff.shape)
        nz = diff != 0
        block = np.zeros((sh.size, m), dtype=np.int64)
        np.add.at(block, (rows[nz], labels[diff[nz]]), 1)
        block += S.bits[sh][:, None]
        out[lo:lo + step] = block
    return out, reps


def _check(theorem: int, S: FSet, shifts: np.ndarray) -> HypothesisReport:
    F = S.field
    lattice = subfield_lattice(F)
    checked = 0
    max_ratio = 0.0
    for G in lattice:
        if G.size == F.q:
            counts = np.array([[S.size]], dtype=np.int64)
            reps = np.array([1])
            sh = shifts[:1]
        else:
            counts, reps = _counts(F, S, G, shifts)
            sh = shifts
        checked += counts.size
        if counts.size:
            max_ratio = max(max_ratio, float(counts.max()) ** 2 / G.size)
        bad = counts * counts > G.size
        if np.any(bad):
            i, c = np.nonzero(bad)
            order = np.lexsort((sh[i], reps[c]))
            j = order[0]
            v = Violation(G, int(reps[c[j]]), int(sh[i[j]]), int(counts[i[j], c[j]]))
            return HypothesisReport(theorem, False, v, checked, max_ratio, lattice)
    return HypothesisReport(theorem, True, None, checked, max_ratio, lattice)


def check_hypothesis_thm1(A: FSet) -> HypothesisReport:
    return _check(1, A, np.zeros(1, dtype=np.int64))


def check_hypothesis_thm2(A: FSet) -> HypothesisReport:
    return _check(2, sumset(A, A), np.arange(A.field.q, dtype=np.int64))
