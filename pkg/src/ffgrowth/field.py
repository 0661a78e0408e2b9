"""Materialized finite fields F_{p^k}.

Elements are integer indices in [0, q): the coefficient vector
(c_0, ..., c_{k-1}) of a residue modulo the defining polynomial is encoded
as sum(c_i * p**i).  Index 0 is the additive identity and 1 the
multiplicative identity.

Multiplication goes through log/antilog tables relative to a fixed primitive
element.  Addition uses full q x q tables for small fields and Zech
logarithms above ``TABLE_LIMIT``.  Every arithmetic method broadcasts over
numpy arrays.
"""
from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass

import numpy as np

from . import _poly
from .errors import DivisionByZero, NotIrreducible, NotPrime, UniverseTooLarge

DEFAULT_UNIVERSE_CAP = 1 << 16
TABLE_LIMIT = 1024
CAP_ENV = "FFGROWTH_UNIVERSE_CAP"


def universe_cap() -> int:
    value = os.environ.get(CAP_ENV)
    if value is None:
        return DEFAULT_UNIVERSE_CAP
    try:
        cap = int(value)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {value!r}") from None
    if cap < 2:
        raise ValueError(f"{CAP_ENV} must be >= 2")
    return cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k.

    Coefficient vectors (c_0, ..., c_{k-1}) are compared low degree first.
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue  # divisible by x
        m = tuple(low) + (1,)
        if _poly.is_irreducible(m, p):
            return m
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.k

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = "" if c == 1 and i > 0 else str(c)
            terms.append(coef + mono)
        return " + ".join(terms) if terms else "0"


def _validate_spec(p: int, k: int, modulus, cap: int) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    q = p**k
    if q > cap:
        raise UniverseTooLarge(f"q = {p}^{k} = {q} exceeds the universe cap {cap}")
    if k == 1:
        # prime field: modulus is a placeholder and ignored
        return FieldSpec(p, 1, (0, 1))
    if modulus is None:
        return FieldSpec(p, k, smallest_irreducible(p, k))
    m = tuple(int(c) for c in modulus)
    if len(m) != k + 1 or m[-1] != 1:
        raise NotIrreducible(f"modulus must be monic of degree {k}: {list(m)}")
    if any(c < 0 or c >= p for c in m):
        raise NotIrreducible(f"modulus coefficients must lie in [0, {p}): {list(m)}")
    if not _poly.is_irreducible(m, p):
        raise NotIrreducible(f"modulus {list(m)} is reducible over F_{p}")
    return FieldSpec(p, k, m)


class FieldTable:
    """Immutable arithmetic tables for one finite field."""

    def __init__(self, spec: FieldSpec, table_limit: int = TABLE_LIMIT):
        self.spec = spec
        self.p = p = spec.p
        self.k = k = spec.k
        self.q = q = spec.q
        self._pw = p ** np.arange(k, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // self._pw) % p
        self.digits = digits

        self.primitive = self._find_primitive()
        exp = self._antilog(self.primitive, digits)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self.exp = exp
        self.log = log

        self.neg_table = ((-digits) % p) @ self._pw
        one_plus = idx - digits[:, 0] + (digits[:, 0] + 1) % p
        self.zech = log[one_plus[exp]]
        inv = np.full(q, -1, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        self.inv_table = inv
        frob = np.zeros(q, dtype=np.int64)
        frob[1:] = exp[(p * log[1:]) % (q - 1)]
        self.frob = frob

        self.add_table = None
        self.mul_table = None
        if q <= table_limit:
            if p == 2:
                add = idx[:, None] ^ idx[None, :]
            else:
                add = np.zeros((q, q), dtype=np.int64)
                for j in range(k):
                    col = digits[:, j]
                    add += ((col[:, None] + col[None, :]) % p) * self._pw[j]
            mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            self.add_table = add
            self.mul_table = mul

        for arr in (self.digits, self.exp, self.log, self.neg_table, self.zech,
                    self.inv_table, self.frob, self.add_table, self.mul_table):
            if arr is not None:
                arr.setflags(write=False)

    # construction helpers

    def poly(self, x: int) -> tuple[int, ...]:
        """Coefficient tuple (low degree first, untrimmed) of element x."""
        return tuple(int(c) for c in self.digits[int(x)])

    def from_poly(self, coeffs) -> int:
        coeffs = list(coeffs)[: self.k] + [0] * max(0, self.k - len(coeffs))
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def _poly_pow(self, x: int, e: int) -> int:
        if self.k == 1:
            return pow(x, e, self.p)
        r = _poly.powmod(_poly.trim(self.poly(x), self.p), e, self.spec.modulus, self.p)
        return self.from_poly(r)

    def _find_primitive(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = prime_factors(n)
        for g in range(2, self.q):
            if all(self._poly_pow(g, n // ell) != 1 for ell in factors):
                return g
        raise AssertionError("no primitive element found")

    def _antilog(self, g: int, digits: np.ndarray) -> np.ndarray:
        p, k, q = self.p, self.k, self.q
        if k == 1:
            mul_g = (np.arange(q, dtype=np.int64) * g) % p
        else:
            m = np.array(self.spec.modulus[:k], dtype=np.int64)
            acc = np.zeros_like(digits)
            cur = digits
            for gj in self.poly(g):
                if gj:
                    acc = (acc + gj * cur) % p
                shifted = np.zeros_like(cur)
                shifted[:, 1:] = cur[:, :-1]
                shifted = (shifted - cur[:, k - 1:k] * m) % p
                cur = shifted
            mul_g = acc @ self._pw
        step = mul_g.tolist()
        out = [1] * (q - 1)
        x = 1
        for i in range(1, q - 1):
            x = step[x]
            out[i] = x
        return np.array(out, dtype=np.int64)

    # arithmetic; all methods broadcast

    def add(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.add_table is not None:
            return self.add_table[x, y]
        x, y = np.broadcast_arrays(x, y)
        n = self.q - 1
        lx = self.log[x]
        ly = self.log[y]
        z = self.zech[(ly - lx) % n]
        res = np.where(z < 0, 0, self.exp[(lx + z) % n])
        return np.where(x == 0, y, np.where(y == 0, x, res))

    def neg(self, x):
        return self.neg_table[np.asarray(x, dtype=np.int64)]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[x, y]
        res = self.exp[(self.log[x] + self.log[y]) % (self.q - 1)]
        return np.where((x == 0) | (y == 0), 0, res)

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise DivisionByZero("0 has no multiplicative inverse")
        return self.inv_table[x]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def square(self, x):
        x = np.asarray(x, dtype=np.int64)
        res = self.exp[(2 * self.log[x]) % (self.q - 1)]
        return np.where(x == 0, 0, res)

    def power(self, x, e: int):
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        if e < 0:
            x = self.inv(x)
            e = -e
        res = self.exp[(e * self.log[x]) % (self.q - 1)]
        return np.where(x == 0, 0, res)

    def frobenius(self, x, times: int = 1):
        x = np.asarray(x, dtype=np.int64)
        for _ in range(times % self.k if self.k > 1 else 0):
            x = self.frob[x]
        return x

    def __repr__(self) -> str:
        return f"FieldTable(p={self.p}, k={self.k}, modulus={list(self.spec.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTable) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)


@functools.lru_cache(maxsize=32)
def _cached_field(spec: FieldSpec, table_limit: int) -> FieldTable:
    return FieldTable(spec, table_limit)


def build_field(p: int, k: int = 1, modulus=None, *, cap: int | None = None,
                table_limit: int = TABLE_LIMIT) -> FieldTable:
    """Build F_{p^k}; the default modulus is the smallest monic irreducible."""
    if cap is None:
        cap = universe_cap()
    spec = _validate_spec(int(p), int(k), modulus, cap)
    return _cached_field(spec, table_limit)
