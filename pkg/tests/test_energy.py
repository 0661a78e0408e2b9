import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffgrowth import (FSet, additive_energy, build_field, cs_growth_check,
                      energy_sum_over_ratios, mixed_energy, ratio_set, sumset)
from ffgrowth.energy import dilate_energy

from _helpers import naive_of, random_set
from _oracle import naive_additive_energy, naive_dilate_energy, naive_mixed_energy


def test_additive_energy_examples(F5):
    A = FSet(F5, [0, 1])
    rep = additive_energy(A, A)
    assert rep.value == 6
    assert rep.histogram.as_dict() == {0: 1, 1: 2, 2: 1}
    assert additive_energy(FSet(F5, [0]), A).value == 2
    full = FSet.full(F5)
    assert additive_energy(full, full).value == 125


def test_mixed_energy_examples(F5):
    A = FSet(F5, [0, 1])
    rep = mixed_energy(A, A + A)
    assert rep.value == 44
    assert rep.histogram.as_dict() == {0: 3, 1: 5, 2: 3, 4: 1}
    assert rep.histogram.total == 2 * 2 * 3
    assert mixed_energy(FSet(F5, [3]), FSet(F5, [0])).value == 1
    assert mixed_energy(FSet(F5), FSet(F5, [1])).value == 0


def test_energy_sum_over_ratios_example(F5):
    res = energy_sum_over_ratios(FSet(F5, [0, 1]))
    assert res.energies == {0: 8, 1: 6, 4: 6}
    assert (res.total, res.bound) == (20, 28)
    assert res.holds and res.pigeonhole_holds
    assert res.witness_r == 1


def test_ratio_sum_bound_for_full_ratio_set(F7):
    A = FSet(F7, [0, 1, 2])
    assert ratio_set(A, A) == FSet.full(F7)
    res = energy_sum_over_ratios(A)
    assert res.bound == 7 * 9 + 81


def test_cs_growth_example(F5):
    rep = cs_growth_check(FSet(F5, [0, 1]))
    assert (rep.lhs, rep.size_sq_sum, rep.energy, rep.rhs) == (64, 3, 44, 132)
    assert rep.holds
    single = cs_growth_check(FSet(F5, [2]))
    assert single.holds and single.lhs == 1 and single.epsilon is None


def test_cs_growth_random_f101():
    F = build_field(101)
    rng = np.random.default_rng(8)
    for _ in range(20):
        A = FSet.from_indices(F, rng.choice(101, 8, replace=False))
        rep = cs_growth_check(A)
        assert rep.holds
        assert rep.energy == mixed_energy(A, A + A).value


@pytest.mark.parametrize("p,k", [(5, 1), (7, 1), (2, 4), (3, 2), (13, 1)])
def test_histograms_match_brute_force(p, k):
    F = build_field(p, k)
    nf = naive_of(F)
    rng = np.random.default_rng(p * k)
    for _ in range(8):
        A = random_set(F, rng, lo=0, hi=4)
        B = random_set(F, rng, lo=0, hi=5)
        assert mixed_energy(A, B).value == naive_mixed_energy(A.to_list(), B.to_list(), nf)
        assert additive_energy(A, B).value == naive_additive_energy(A.to_list(), B.to_list(), nf)
        r = int(rng.integers(F.q))
        assert dilate_energy(A, r) == naive_dilate_energy(A.to_list(), r, nf)


def test_dilate_energy_at_zero_counts_multiplicity(F7):
    A = FSet(F7, [1, 2, 5])
    assert dilate_energy(A, 0) == 27
    assert dilate_energy(A, 3) == additive_energy(A, FSet(F7, [3, 6, 1])).value


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(7, 1), (2, 4), (13, 1), (3, 2)]), st.data())
def test_energy_invariants(pk, data):
    F = build_field(*pk)
    X = FSet(F, data.draw(st.sets(st.integers(0, F.q - 1), min_size=1, max_size=8)))
    Y = FSet(F, data.draw(st.sets(st.integers(0, F.q - 1), min_size=1, max_size=8)))
    e = additive_energy(X, Y).value
    assert e == additive_energy(Y, X).value
    assert additive_energy(X, X).value >= len(X) ** 2
    assert e <= len(X) * len(Y) * min(len(X), len(Y))
    assert len(sumset(X, Y)) * e >= (len(X) * len(Y)) ** 2
    h = additive_energy(X, Y).histogram
    assert h.total == len(X) * len(Y)
    assert e * len(h.support) >= h.total**2
    m = mixed_energy(X, Y)
    assert m.histogram.total == len(X) ** 2 * len(Y)
    if len(X) >= 2:
        res = energy_sum_over_ratios(X)
        assert res.holds and res.pigeonhole_holds
    assert cs_growth_check(X).holds
