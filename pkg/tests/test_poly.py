import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalp import ball as B
from deltalp.ball import Ball
from deltalp.errors import AmbiguousDegree, DomainError, PrecisionExhausted
from deltalp.poly import (
    IntervalPolynomial,
    RootSign,
    Status,
    Verdict,
    certify_adaptive,
    certify_hyperbolic,
    isolate_real_roots,
    refine_root,
)
from oracles import sturm_count

coeff = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(st.lists(coeff, min_size=2, max_size=9).filter(lambda c: c[-1] != 0))
def test_isolation_count_matches_sturm(coeffs):
    iso = isolate_real_roots(IntervalPolynomial(coeffs))
    assert iso.status is Status.COMPLETE
    assert iso.certified_count == sturm_count(coeffs)


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=8), min_size=1, max_size=6, unique=True))
def test_intervals_contain_the_roots_and_are_disjoint(roots):
    p = IntervalPolynomial.from_roots(roots)
    iso = isolate_real_roots(p)
    assert iso.certified_count == len(roots)
    ivs = sorted(iso.intervals, key=lambda iv: iv.lo)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    for r in roots:
        assert sum(r in iv for iv in ivs) >= 1


def test_ball_coefficients_with_radius():
    p = IntervalPolynomial([-B.pi(), 0, 1])  # x^2 - pi
    iso = isolate_real_roots(p, min_width=F(1, 10**20))
    assert iso.certified_count == 2
    for iv in iso.intervals:
        assert iv.width <= F(1, 10**20)
        assert iv.ball().overlaps(B.sqrt(B.pi())) or iv.ball().overlaps(-B.sqrt(B.pi()))


def test_region_restriction():
    p = IntervalPolynomial.from_roots([F(-2), F(-1), F(3)])
    assert isolate_real_roots(p, region="negative").certified_count == 2
    assert isolate_real_roots(p, region="positive").certified_count == 1


def test_zero_and_ambiguous_polynomials():
    with pytest.raises(DomainError):
        isolate_real_roots(IntervalPolynomial([0, 0]))
    fuzzy = IntervalPolynomial([1, Ball.from_interval(F(-1, 10), F(1, 10))])
    with pytest.raises(AmbiguousDegree):
        isolate_real_roots(fuzzy)
    assert isolate_real_roots(IntervalPolynomial([5])).certified_count == 0


def test_multiplicity_reported_for_exact_input():
    p = IntervalPolynomial.from_roots([F(1), F(1), F(0), F(0), F(0), F(-2)])
    iso = isolate_real_roots(p)
    by_root = {iv.midpoint: m for iv, m in zip(iso.intervals, iso.multiplicities) if iv.width == 0}
    assert iso.count_with_multiplicity == 6
    assert by_root[F(0)] == 3


def test_certify_basic_verdicts():
    assert certify_hyperbolic(IntervalPolynomial([-2, 0, 1])).verdict is Verdict.HYPERBOLIC
    assert certify_hyperbolic(IntervalPolynomial([1, 0, 1])).verdict is Verdict.NOT_HYPERBOLIC
    assert certify_hyperbolic(IntervalPolynomial([7])).verdict is Verdict.HYPERBOLIC


def test_certify_root_sign():
    p = IntervalPolynomial.from_roots([F(-1), F(2)])
    assert certify_hyperbolic(p, RootSign.ANY).verdict is Verdict.HYPERBOLIC
    assert certify_hyperbolic(p, RootSign.ALL_NEGATIVE).verdict is Verdict.NOT_HYPERBOLIC
    q = IntervalPolynomial.from_roots([F(-1), F(-2)])
    assert certify_hyperbolic(q, "AllNegative").verdict is Verdict.HYPERBOLIC


def test_double_root_with_and_without_separation():
    p = IntervalPolynomial.from_roots([F(1), F(1)])
    assert certify_hyperbolic(p).verdict is Verdict.HYPERBOLIC
    assert certify_hyperbolic(p, min_sep=F(1, 10)).verdict is Verdict.NOT_HYPERBOLIC


def test_min_separation_is_certified():
    p = IntervalPolynomial.from_roots([F(0), F(1), F(3)])
    ok = certify_hyperbolic(p, min_sep=1)
    assert ok.verdict is Verdict.HYPERBOLIC and ok.min_separation >= 1
    assert certify_hyperbolic(p, min_sep=F(3, 2)).verdict is Verdict.NOT_HYPERBOLIC


def test_close_roots_under_ball_coefficients():
    eps = Ball.from_value(F(1, 10**12), 64)
    p = IntervalPolynomial.from_roots([B.pi(64), B.pi(64) + eps], prec=64)
    assert certify_hyperbolic(p, min_sep=1).verdict is Verdict.NOT_HYPERBOLIC


def test_adaptive_precision_is_monotone():
    def build(prec):
        s = B.sqrt(Ball.from_value(2, prec))
        return IntervalPolynomial.from_roots([s, s + Ball.from_value(F(1, 2**100), prec)], prec=prec)

    verdicts = [certify_hyperbolic(build(p)).verdict for p in (64, 128, 256, 512)]
    decided = [v for v in verdicts if v is not Verdict.UNDETERMINED]
    assert len(set(decided)) <= 1
    assert certify_adaptive(build, max_prec=512).verdict is Verdict.HYPERBOLIC


def test_refine_root():
    p = IntervalPolynomial([-2, 0, 1])
    iv = refine_root(p, (1, 2), F(1, 2**80))
    assert iv.width <= F(1, 2**80)
    assert iv.ball(128).overlaps(B.sqrt(Ball.from_value(2, 128)))
    with pytest.raises(PrecisionExhausted):
        refine_root(p, (2, 3), F(1, 100))


def test_arithmetic_and_evaluation():
    p = IntervalPolynomial([1, 2, 3])
    q = IntervalPolynomial([0, 1])
    assert (p * q).exact == (F(0), F(1), F(2), F(3))
    assert (p - p).is_zero
    assert p(Ball.from_value(2)).overlaps(17)
    assert p.taylor_shift(1).exact == (F(6), F(8), F(3))


def test_random_polynomials_seeded():
    rng = random.Random(3)
    for _ in range(40):
        c = [F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(rng.randint(2, 9))]
        if c[-1] == 0:
            c[-1] = F(1)
        assert isolate_real_roots(IntervalPolynomial(c)).certified_count == sturm_count(c)
