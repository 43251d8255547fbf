from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalp import ball as B
from deltalp.ball import Ball
from deltalp.constructions import (
    ExpPolynomial,
    SampleWindow,
    SequenceWindow,
    appell_poly,
    delta_appell_poly,
    gaussian_exp_poly,
    generalized_binomial,
    jensen_poly,
    jensen_root_from_x,
    jensen_to_delta_appell,
    laguerre_poly,
)
from deltalp.errors import WindowMismatch
from deltalp.poly import RootSign, Verdict, certify_hyperbolic, isolate_real_roots
from deltalp.specfun import bessel_clifford, partition_numbers


def test_jensen_coefficients():
    J = jensen_poly(SequenceWindow(0, (1, 2, 3)))
    assert J.exact == (F(1), F(4), F(3))


def test_partition_jensen_boundary_small():
    p = partition_numbers(30)
    J24 = jensen_poly(SequenceWindow.from_sequence(p.values, 24, 2))
    J25 = jensen_poly(SequenceWindow.from_sequence(p.values, 25, 2))
    assert certify_hyperbolic(J24).verdict is Verdict.NOT_HYPERBOLIC
    assert certify_hyperbolic(J25, RootSign.ALL_NEGATIVE).verdict is Verdict.HYPERBOLIC


def test_appell_of_exponential():
    # f = e^t at t = 0: A_d(x) = (x + 1)^d
    A = appell_poly([1, 1, 1, 1], 3)
    assert A.exact == (F(1), F(3), F(3), F(1))
    with pytest.raises(ValueError):
        appell_poly([1, 1], 3)


def test_windows_validate():
    with pytest.raises(ValueError):
        SequenceWindow(0, ())
    with pytest.raises(ValueError):
        SampleWindow(0, -1, (1,))
    w = SampleWindow.from_function(lambda t: t * t, F(1), F(1, 2), 3)
    assert w.values == (F(1), F(9, 4), F(4), F(25, 4))
    assert w.shifted(lambda t: t * t).values[0] == F(9, 4)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=6),
       st.fractions(min_value=-2, max_value=2, max_denominator=7))
def test_jensen_delta_appell_identity(values, x):
    # J(-e^x) = (-1)^d A(x)
    window = SequenceWindow(0, tuple(values))
    J = jensen_poly(window)
    if J.degree != window.d:
        return
    A = jensen_to_delta_appell(J, window)
    xb = Ball.from_value(x)
    lhs = J(-B.exp(xb))
    rhs = A(xb) * (-1) ** window.d
    assert lhs.overlaps(rhs)


def test_jensen_roots_correspond_to_x_zeros():
    window = SequenceWindow(0, (F(6), F(5, 2), F(1, 3)))  # 6 + 5x + x^2/3: two negative roots
    J = jensen_poly(window)
    A = jensen_to_delta_appell(J, window)
    rep = A.certify()
    assert rep.verdict is Verdict.HYPERBOLIC
    iso = isolate_real_roots(J, min_width=F(1, 10**20))
    ws = sorted(float(jensen_root_from_x(x)) for x in A.x_roots(rep))
    js = sorted(float(iv.ball()) for iv in iso.intervals)
    assert ws == pytest.approx(js, rel=1e-12)


def test_window_mismatch():
    window = SequenceWindow(0, (1, 2, 3))
    with pytest.raises(WindowMismatch):
        jensen_to_delta_appell(jensen_poly(SequenceWindow(0, (1, 2))), window)
    with pytest.raises(WindowMismatch):
        jensen_to_delta_appell(jensen_poly(SequenceWindow(0, (1, 2, 4))), window)


def test_delta_appell_coefficients():
    w = SampleWindow(F(0), F(1, 2), (F(1), F(2), F(5)))
    A = delta_appell_poly(w)
    assert A.coeffs == (F(4), F(-16), F(20))


def test_delta_appell_multiple_root():
    # (e^x - 1)^2 has a double zero at x = 0
    A = ExpPolynomial(1, (1, -2, 1))
    rep = A.certify()
    assert rep.verdict is Verdict.HYPERBOLIC
    assert rep.roots.multiplicities == (2,)


def test_bessel_clifford_delta_appell_is_hyperbolic():
    nu = F(3, 2)
    delta = B.pi() ** 2 / 6
    for d in range(1, 7):
        w = SampleWindow.from_function(lambda t: bessel_clifford(nu, t), F(0), delta, d)
        assert delta_appell_poly(w).certify().verdict is Verdict.HYPERBOLIC


def test_exp_polynomial_algebra():
    A = ExpPolynomial(1, (F(1), F(2)))
    assert (A.times_exp() - A).coeffs == (F(-1), F(-1), F(2))
    assert A(0).overlaps(3)


@pytest.mark.parametrize("nu", [F(0), F(1, 2), F(3, 2), B.pi()])
def test_laguerre_small_degrees(nu):
    L1 = laguerre_poly(1, nu)
    # L_1^nu(-x) = 1 + nu + x
    assert L1.coeffs[0].overlaps(Ball.from_value(nu) + 1) and L1.coeffs[1].overlaps(1)
    L2 = laguerre_poly(2, nu)
    nub = Ball.from_value(nu)
    assert L2.coeffs[0].overlaps((nub + 2) * (nub + 1) / 2)
    assert L2.coeffs[1].overlaps(nub + 2) and L2.coeffs[2].overlaps(F(1, 2))


def test_laguerre_nu_zero_d2():
    assert laguerre_poly(2, 0).exact == (F(1), F(2), F(1, 2))
    with pytest.raises(ValueError):
        laguerre_poly(-1, 0)


def test_generalized_binomial():
    assert generalized_binomial(F(7), 3) == comb(7, 3)
    assert generalized_binomial(F(1, 2), 2) == F(-1, 8)
    assert generalized_binomial(B.pi(), 0).overlaps(1)


def test_gaussian_first_degrees():
    g1 = gaussian_exp_poly(F(1, 2), 1)
    rep = g1.certify()
    assert g1.x_roots(rep)[0].overlaps(F(1, 2))
    g2 = gaussian_exp_poly(F(1, 2), 2)
    rep2 = g2.certify(min_sep=1)
    assert rep2.verdict is Verdict.HYPERBOLIC
