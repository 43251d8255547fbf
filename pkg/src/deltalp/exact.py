"""Dense polynomials over the rationals (coefficient lists, lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

QPoly = list  # list[Fraction]


def trim(p: Sequence[Fraction]) -> QPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Fraction]) -> int:
    return len(trim(p)) - 1


def add(p, q) -> QPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q) -> QPoly:
    return add(p, [-c for c in q])


def mul(p, q) -> QPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c) -> QPoly:
    return trim([c * a for a in p])


def derivative(p) -> QPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p, q) -> tuple[QPoly, QPoly]:
    p = trim(p)
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    rem = list(p)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        f = rem[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            rem[shift + i] -= f * c
        rem = trim(rem)
    return trim(quot), rem


def monic(p) -> QPoly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def gcd(p, q) -> QPoly:
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def squarefree_decomposition(p) -> list[tuple[QPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with ``f_i`` squarefree and coprime."""
    p = trim(p)
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((monic(a), i))
        b, _ = divmod_poly(b, a)
        c, _ = divmod_poly(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def evaluate(p, x: Fraction) -> Fraction:
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def taylor_shift(p, c: Fraction) -> QPoly:
    """Coefficients of ``p(x + c)``."""
    n = len(p)
    out = [Fraction(0)] * n
    for i, a in enumerate(p):
        if not a:
            continue
        pc = Fraction(1)
        for j in range(i, -1, -1):
            out[j] += a * comb(i, j) * pc
            pc *= c
    return trim(out)


def from_roots(roots, lead=Fraction(1)) -> QPoly:
    p = [Fraction(lead)]
    for r in roots:
        p = mul(p, [-Fraction(r), Fraction(1)])
    return p


def common_denominator(p) -> int:
    from math import lcm

    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    return den
