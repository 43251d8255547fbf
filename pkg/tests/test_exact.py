from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from deltalp import exact as Q

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small, min_size=1, max_size=7)


@given(polys, polys.filter(lambda p: any(p)))
def test_divmod_reconstructs(p, q):
    quo, rem = Q.divmod_poly(p, q)
    assert Q.add(Q.mul(quo, Q.trim(q)), rem) == Q.trim(p)
    assert Q.degree(rem) < Q.degree(q)


@given(st.lists(small, min_size=1, max_size=4), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_squarefree_decomposition_recovers_multiplicities(roots, mults):
    roots = sorted(set(roots))
    p = Q.from_roots([r for r, m in zip(roots, mults) for _ in range(m)])
    parts = Q.squarefree_decomposition(p)
    found = {}
    for f, m in parts:
        for r in roots:
            if Q.evaluate(f, r) == 0:
                found[r] = m
    assert found == {r: m for r, m in zip(roots, mults)}


@given(polys, small)
def test_taylor_shift_is_composition(p, c):
    shifted = Q.taylor_shift(p, c)
    for x in (F(0), F(1), F(-3, 2)):
        assert Q.evaluate(shifted, x) == Q.evaluate(p, x + c)


def test_gcd_is_monic_common_factor():
    a = Q.from_roots([F(1), F(2), F(3)])
    b = Q.from_roots([F(2), F(3), F(5)], F(7))
    assert Q.gcd(a, b) == Q.from_roots([F(2), F(3)])


def test_derivative_and_common_denominator():
    assert Q.derivative([F(1), F(2), F(3)]) == [F(2), F(6)]
    assert Q.common_denominator([F(1, 2), F(1, 3), F(5)]) == 6
