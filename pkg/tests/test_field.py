import itertools

import numpy as np
import pytest

from ffgrowth import (DivisionByZero, FSet, NotIrreducible, NotPrime, UniverseTooLarge,
                      build_field, element_degree, generated_subfield,
                      generated_subfield_closure, subfield_lattice)
from ffgrowth.field import smallest_irreducible

from _helpers import naive_of
from _oracle import naive_irreducible, naive_subfield

SMALL = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 6)]


def test_prime_field_is_integers_mod_p(F5):
    for x in range(5):
        for y in range(5):
            assert F5.add(x, y) == (x + y) % 5
            assert F5.mul(x, y) == (x * y) % 5


def test_f4_omega_squared():
    F = build_field(2, 2, [1, 1, 1])
    assert F.mul(2, 2) == 3
    assert F.add(2, 1) == 3


def test_errors():
    with pytest.raises(NotPrime):
        build_field(4, 1)
    with pytest.raises(NotPrime):
        build_field(1, 1)
    with pytest.raises(NotIrreducible):
        build_field(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(NotIrreducible):
        build_field(2, 2, [1, 1, 0])  # not monic
    with pytest.raises(NotIrreducible):
        build_field(3, 2, [1, 0, 1, 0])  # wrong degree
    with pytest.raises(UniverseTooLarge):
        build_field(2, 17)


def test_universe_cap_env(monkeypatch):
    monkeypatch.setenv("FFGROWTH_UNIVERSE_CAP", "100")
    with pytest.raises(UniverseTooLarge):
        build_field(101)
    build_field(97)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3), (2, 5), (7, 2)])
def test_default_modulus_is_lexicographically_smallest(p, k):
    expected = None
    for low in itertools.product(range(p), repeat=k):
        if naive_irreducible(p, list(low) + [1]):
            expected = tuple(low) + (1,)
            break
    assert smallest_irreducible(p, k) == expected
    assert build_field(p, k).spec.modulus == expected


@pytest.mark.parametrize("p,k", SMALL)
@pytest.mark.parametrize("table_limit", [1024, 0])
def test_arithmetic_matches_naive_polynomials(p, k, table_limit):
    F = build_field(p, k, table_limit=table_limit)
    assert (F.add_table is None) == (table_limit == 0)
    nf = naive_of(F)
    xs = np.arange(F.q)
    add = F.add(xs[:, None], xs[None, :])
    mul = F.mul(xs[:, None], xs[None, :])
    sub = F.sub(xs[:, None], xs[None, :])
    for x in range(F.q):
        for y in range(F.q):
            assert add[x, y] == nf.add(x, y)
            assert mul[x, y] == nf.mul(x, y)
            assert sub[x, y] == nf.sub(x, y)
    for x in range(1, F.q):
        assert F.inv(x) == nf.inv(x)
        assert F.square(x) == nf.mul(x, x)
        assert F.frob[x] == nf.pow(x, p)


def test_inverse_sentinel(F16):
    assert F16.inv_table[0] == -1
    with pytest.raises(DivisionByZero):
        F16.inv(0)
    with pytest.raises(DivisionByZero):
        F16.div([1, 2], [3, 0])
    xs = np.arange(1, 16)
    assert np.all(F16.mul(xs, F16.inv(xs)) == 1)


@pytest.mark.parametrize("p,k", [(2, 11), (3, 7), (101, 1), (5, 4)])
def test_random_triples_large_fields(p, k):
    F = build_field(p, k)
    assert F.add_table is None or F.q <= 1024
    rng = np.random.default_rng(11)
    x, y, z = rng.integers(0, F.q, size=(3, 100_000))
    assert np.array_equal(F.add(F.add(x, y), z), F.add(x, F.add(y, z)))
    assert np.array_equal(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z)))
    assert np.array_equal(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z)))
    assert np.array_equal(F.add(x, y), F.add(y, x))
    assert np.array_equal(F.mul(x, y), F.mul(y, x))
    assert np.array_equal(F.add(x, F.neg(x)), np.zeros_like(x))
    nf = naive_of(F)
    for a, b in zip(x[:300].tolist(), y[:300].tolist()):
        assert F.mul(a, b) == nf.mul(a, b)
        assert F.add(a, b) == nf.add(a, b)


def test_frobenius_is_automorphism_fixing_prime_field():
    for p, k in [(2, 6), (3, 3), (2, 4), (5, 2)]:
        F = build_field(p, k)
        xs = np.arange(F.q)
        fr = F.frob
        assert sorted(fr.tolist()) == list(range(F.q))
        assert np.array_equal(fr[F.add(xs[:, None], xs[None, :])], F.add(fr[:, None], fr[None, :]))
        assert np.array_equal(fr[F.mul(xs[:, None], xs[None, :])], F.mul(fr[:, None], fr[None, :]))
        assert np.flatnonzero(fr == xs).tolist() == list(range(p))


def test_determinism():
    a = build_field(3, 4, table_limit=0)
    b = build_field(3, 4, table_limit=0)
    for name in ("exp", "log", "zech", "inv_table", "frob", "neg_table"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    from ffgrowth.field import FieldTable
    c = FieldTable(a.spec)
    assert np.array_equal(a.exp, c.exp) and c.primitive == a.primitive


def test_tables_are_read_only(F16):
    with pytest.raises(ValueError):
        F16.add_table[0, 0] = 1


@pytest.mark.parametrize("p,k,sizes", [(2, 6, [2, 4, 8, 64]), (7, 1, [7]), (2, 2, [2, 4]),
                                       (3, 4, [3, 9, 81]), (2, 12, [2, 4, 8, 16, 64, 4096])])
def test_subfield_lattice_sizes(p, k, sizes):
    F = build_field(p, k)
    lattice = subfield_lattice(F)
    assert [G.size for G in lattice] == sizes
    assert [G.d for G in lattice] == [d for d in range(1, k + 1) if k % d == 0]
    assert lattice[-1].elements == FSet.full(F)


@pytest.mark.parametrize("p,k", [(2, 6), (3, 2), (2, 4), (5, 2)])
def test_subfields_match_oracle_and_are_closed(p, k):
    F = build_field(p, k)
    nf = naive_of(F)
    for G in subfield_lattice(F):
        elems = set(G.elements)
        assert elems == naive_subfield(nf, G.d)
        assert len(elems) == p**G.d
        e = G.elements.elements
        assert set(F.add(e[:, None], e[None, :]).ravel().tolist()) <= elems
        assert set(F.mul(e[:, None], e[None, :]).ravel().tolist()) <= elems
        assert set(F.inv(e[e != 0]).tolist()) <= elems


def test_element_degree_examples():
    F4 = build_field(2, 2, [1, 1, 1])
    assert element_degree(F4, 1) == 1
    assert element_degree(F4, 0) == 1
    assert element_degree(F4, 2) == 2
    F64 = build_field(2, 6)
    degs = [element_degree(F64, x) for x in range(64)]
    assert all(6 % d == 0 for d in degs)
    assert sorted(set(degs)) == [1, 2, 3, 6]
    assert degs.count(3) == 8 - 2


def test_generated_subfield_examples():
    F16 = build_field(2, 4)
    G = generated_subfield(FSet(F16, [0, 1]))
    assert G.size == 2
    F4 = build_field(2, 2, [1, 1, 1])
    assert generated_subfield(FSet(F4, [2])).size == 4
    F64 = build_field(2, 6)
    x = next(x for x in range(64) if element_degree(F64, x) == 3)
    assert generated_subfield(FSet(F64, [x])).size == 8
    assert generated_subfield_closure(FSet(F64, [x])).size == 8


def test_generated_subfield_methods_agree_randomly():
    rng = np.random.default_rng(5)
    for p, k in [(2, 6), (3, 4), (2, 4), (5, 2)]:
        F = build_field(p, k)
        for _ in range(40):
            n = int(rng.integers(1, 4))
            B = FSet.from_indices(F, rng.choice(F.q, size=n, replace=False))
            assert generated_subfield(B, check=False) == generated_subfield_closure(B)
