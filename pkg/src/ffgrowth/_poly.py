"""Dense polynomial arithmetic over F_p.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""
from __future__ import annotations

from typing import Sequence

Poly = tuple


def trim(a: Sequence[int], p: int) -> Poly:
    coeffs = [c % p for c in a]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(out, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * inv_lead % p
        if c:
            quot[shift] = c
            for j, bj in enumerate(b):
                rem[shift + j] = (rem[shift + j] - c * bj) % p
    return trim(quot, p), trim(rem, p)


def mod(a: Poly, m: Poly, p: int) -> Poly:
    return divmod_(a, m, p)[1]


def mulmod(a: Poly, b: Poly, m: Poly, p: int) -> Poly:
    return mod(mul(a, b, p), m, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return mod(result, m, p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    if not a:
        return a
    inv_lead = pow(a[-1], -1, p)
    return trim([c * inv_lead for c in a], p)


def has_root(m: Poly, p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(m):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def is_irreducible(m: Poly, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Degree <= 3 uses the root test; higher degrees use Ben-Or's test
    gcd(x^(p^i) - x, m) = 1 for i <= deg/2.
    """
    k = degree(m)
    if k < 1:
        return False
    if k == 1:
        return True
    if k <= 3:
        return not has_root(m, p)
    x: Poly = (0, 1)
    xp = x
    for _ in range(k // 2):
        xp = powmod(xp, p, m, p)
        if degree(gcd(m, sub(xp, x, p), p)) > 0:
            return False
    return True
