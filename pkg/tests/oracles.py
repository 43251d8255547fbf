"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = _trim(a)
    return a


def sturm_count(coeffs) -> int:
    """Number of distinct real roots of an ascending Fraction coefficient list."""
    p = _trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    seq = [p, _trim([i * c for i, c in enumerate(p)][1:])]
    while len(seq[-1]) > 1:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        s = [x for x in signs if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if a * b < 0)

    at_pos = [1 if q[-1] > 0 else -1 for q in seq]
    at_neg = [(1 if q[-1] > 0 else -1) * (-1) ** (len(q) - 1) for q in seq]
    return changes(at_neg) - changes(at_pos)


@lru_cache(maxsize=None)
def _count(n: int, largest: int) -> int:
    if n == 0:
        return 1
    return sum(_count(n - k, k) for k in range(1, min(n, largest) + 1))


def brute_partitions(n: int) -> int:
    """p(n) by direct enumeration of partitions with bounded largest part."""
    return _count(n, n)


def brute_colored_partitions(n: int, colors: int) -> int:
    """Coefficient of q^n in prod (1 - q^k)^(-colors), by repeated convolution."""
    series = [1] + [0] * n
    for _ in range(colors):
        for k in range(1, n + 1):
            for m in range(k, n + 1):
                series[m] += series[m - k]
    return series[n]
