"""Jensen, Appell, delta-Appell and Laguerre polynomials.

Exponential polynomials ``sum c_k e^{k delta x}`` are analysed through the
substitution ``y = e^{delta x}``; real zeros in ``x`` are exactly the positive
zeros in ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from . import ball as B
from .ball import DEFAULT_PREC, Ball, Number
from .errors import WindowMismatch
from .poly import (
    HyperbolicityReport,
    IntervalPolynomial,
    RootInterval,
    RootIsolation,
    RootSign,
    Status,
    Verdict,
    certify_hyperbolic,
    refine_isolation,
)

Value = Ball | Fraction | int


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _scale(v: Value, c: int, prec: int) -> Value:
    if _is_exact(v):
        return Fraction(v) * c
    return Ball.from_value(v, prec) * c


@dataclass(frozen=True)
class SequenceWindow:
    """Consecutive terms ``a_n, ..., a_{n+d}``."""

    n: int
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("a window needs at least one value")

    @property
    def d(self) -> int:
        return len(self.values) - 1

    @classmethod
    def from_sequence(cls, a: Callable[[int], Value] | Sequence[Value], n: int, d: int) -> "SequenceWindow":
        if callable(a):
            return cls(n, tuple(a(n + k) for k in range(d + 1)))
        return cls(n, tuple(a[n + k] for k in range(d + 1)))


@dataclass(frozen=True)
class SampleWindow:
    """Samples ``f(t0), f(t0 + delta), ..., f(t0 + d delta)``."""

    t0: Value
    delta: Value
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("a window needs at least one value")
        if Ball.from_value(self.delta, 64).sign() != 1:
            raise ValueError("delta must be positive")

    @property
    def d(self) -> int:
        return len(self.values) - 1

    @classmethod
    def from_function(cls, f: Callable[[Value], Value], t0: Value, delta: Value, d: int) -> "SampleWindow":
        if _is_exact(t0) and _is_exact(delta):
            pts = [Fraction(t0) + k * Fraction(delta) for k in range(d + 1)]
        else:
            prec = max(getattr(t0, "prec", DEFAULT_PREC), getattr(delta, "prec", DEFAULT_PREC))
            t0b, db = Ball.from_value(t0, prec), Ball.from_value(delta, prec)
            pts = [t0b + db * k for k in range(d + 1)]
        return cls(t0, delta, tuple(f(t) for t in pts))

    def shifted(self, f: Callable[[Value], Value]) -> "SampleWindow":
        """Window of the same length starting at ``t0 + delta``."""
        if _is_exact(self.t0) and _is_exact(self.delta):
            t1 = Fraction(self.t0) + Fraction(self.delta)
        else:
            t1 = Ball.from_value(self.t0) + Ball.from_value(self.delta)
        return SampleWindow.from_function(f, t1, self.delta, self.d)


class ExpPolynomial:
    """``x -> sum_k c_k e^{k delta x}``."""

    __slots__ = ("delta", "coeffs", "prec")

    def __init__(self, delta: Value, coeffs: Sequence[Value], prec: int | None = None):
        self.delta = delta
        self.coeffs = tuple(coeffs)
        self.prec = prec or max([getattr(c, "prec", DEFAULT_PREC) for c in self.coeffs], default=DEFAULT_PREC)

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:
        return f"ExpPolynomial(delta={self.delta!r}, coeffs={list(self.coeffs)!r})"

    def to_y_polynomial(self) -> IntervalPolynomial:
        return IntervalPolynomial(self.coeffs, self.prec)

    def evaluate(self, x: Number) -> Ball:
        y = B.exp(Ball.from_value(self.delta, self.prec) * Ball.from_value(x, self.prec))
        return self.to_y_polynomial().evaluate(y)

    __call__ = evaluate

    def __sub__(self, other: "ExpPolynomial") -> "ExpPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else 0
            b = other.coeffs[k] if k < len(other.coeffs) else 0
            out.append(a - b if _is_exact(a) and _is_exact(b) else Ball.from_value(a, self.prec) - b)
        return ExpPolynomial(self.delta, out, self.prec)

    def times_exp(self) -> "ExpPolynomial":
        """Multiply by ``e^{delta x}``."""
        return ExpPolynomial(self.delta, (0,) + self.coeffs, self.prec)

    def x_root(self, iv: RootInterval) -> Ball:
        """Enclosure of the x-zero for a positive y-root interval."""
        y = Ball.from_interval(iv.lo, iv.hi, self.prec)
        return B.log(y) / Ball.from_value(self.delta, self.prec)

    def gap(self, a: RootInterval, b: RootInterval) -> tuple[Fraction, Fraction]:
        """Bounds on the x-distance between the zeros in two y-intervals."""
        d = Ball.from_value(self.delta, self.prec)
        inner = B.log(Ball.from_value(b.lo / a.hi, self.prec)) / d
        if a.lo <= 0:
            return inner.interval()[0], None
        outer = B.log(Ball.from_value(b.hi / a.lo, self.prec)) / d
        return inner.interval()[0], outer.interval()[1]

    def certify(self, min_sep: Number | None = None, x_bits: int = 40, **kwargs) -> HyperbolicityReport:
        """Does it have ``d`` real zeros (``min_sep`` apart in x, when given)?"""
        y = self.to_y_polynomial()
        if y.degree < self.d or not y.degree_certain:
            # a vanishing top coefficient means fewer than d zeros
            if y.degree_certain:
                return HyperbolicityReport(
                    Verdict.NOT_HYPERBOLIC, RootIsolation((), (), Status.COMPLETE), None, self.prec,
                    "leading coefficient vanishes",
                )
        if min_sep is None:
            report = certify_hyperbolic(y, RootSign.ALL_POSITIVE, None, **kwargs)
        else:
            report = certify_hyperbolic(y, RootSign.ALL_POSITIVE, min_sep, gap=self.gap, **kwargs)
        if report.roots.intervals and report.verdict is not Verdict.UNDETERMINED:
            # tighten to a small relative width so that log(y) is sharp
            rel = Fraction(1, 2**x_bits)
            iso = refine_isolation(y, report.roots, lambda iv: iv.lo > 0 and iv.width <= iv.lo * rel)
            report = replace(report, roots=iso)
        return report

    def x_roots(self, report: HyperbolicityReport) -> list[Ball]:
        return [self.x_root(iv) for iv in report.roots.intervals]


def jensen_poly(w: SequenceWindow, prec: int | None = None) -> IntervalPolynomial:
    """J_d(x) = sum C(d,k) a_{n+k} x^k."""
    d = w.d
    prec = prec or DEFAULT_PREC
    return IntervalPolynomial([_scale(a, comb(d, k), prec) for k, a in enumerate(w.values)], prec)


def appell_poly(derivs: Sequence[Value], d: int, prec: int | None = None) -> IntervalPolynomial:
    """A_d(t; x) = sum C(d,k) f^(k)(t) x^(d-k), from f(t), f'(t), ..., f^(d)(t)."""
    if len(derivs) != d + 1:
        raise ValueError("need exactly d + 1 derivative values")
    prec = prec or DEFAULT_PREC
    coeffs = [_scale(derivs[d - i], comb(d, d - i), prec) for i in range(d + 1)]
    return IntervalPolynomial(coeffs, prec)


def _delta_power(delta: Value, d: int, prec: int) -> Value:
    if _is_exact(delta):
        return Fraction(delta) ** d
    return Ball.from_value(delta, prec) ** d


def delta_appell_poly(w: SampleWindow, prec: int | None = None) -> ExpPolynomial:
    """c_k = C(d,k) (-1)^(d-k) f(t0 + k delta) / delta^d."""
    d = w.d
    prec = prec or DEFAULT_PREC
    scale = _delta_power(w.delta, d, prec)
    coeffs = []
    for k, f in enumerate(w.values):
        c = comb(d, k) * (-1) ** (d - k)
        if _is_exact(f) and _is_exact(scale):
            coeffs.append(Fraction(f) * c / scale)
        else:
            coeffs.append(Ball.from_value(f, prec) * c / Ball.from_value(scale, prec))
    return ExpPolynomial(w.delta, coeffs, prec)


def jensen_to_delta_appell(J: IntervalPolynomial, window: SequenceWindow) -> ExpPolynomial:
    """The delta = 1 exponential polynomial A with ``J(-e^x) = (-1)^d A(x)``.

    Coefficients are C(d,k) (-1)^(d-k) a_{n+k}, so x-zeros of A and roots of
    J correspond through ``w = -e^x``.
    """
    d = window.d
    if J.degree != d and not (J.is_zero and all(_is_zero(v) for v in window.values)):
        raise WindowMismatch(f"polynomial degree {J.degree} does not match window length {d + 1}")
    expected = jensen_poly(window, J.prec)
    for k in range(d + 1):
        got = J.coeffs[k] if k < len(J.coeffs) else Ball.from_value(0, J.prec)
        want = expected.coeffs[k] if k < len(expected.coeffs) else Ball.from_value(0, J.prec)
        if not got.overlaps(want):
            raise WindowMismatch(f"coefficient {k} does not match the window")
    coeffs = []
    for k, a in enumerate(window.values):
        c = comb(d, k) * (-1) ** (d - k)
        coeffs.append(Fraction(a) * c if _is_exact(a) else Ball.from_value(a, J.prec) * c)
    return ExpPolynomial(1, coeffs, J.prec)


def _is_zero(v) -> bool:
    return (v == 0) if _is_exact(v) else Ball.from_value(v).sign() == 0


def jensen_root_from_x(x: Ball) -> Ball:
    """Jensen root ``w = -e^x`` matching an x-zero of the transformed polynomial."""
    return -B.exp(x)


def generalized_binomial(top: Value, m: int, prec: int = DEFAULT_PREC) -> Value:
    """C(top, m) = top (top-1) ... (top-m+1) / m!."""
    if _is_exact(top):
        num = Fraction(1)
        for i in range(m):
            num *= Fraction(top) - i
        return num / factorial(m)
    t = Ball.from_value(top, prec)
    num = B.one(prec)
    for i in range(m):
        num = num * (t - i)
    return num / factorial(m)


def laguerre_poly(d: int, nu: Value, prec: int | None = None) -> IntervalPolynomial:
    """Coefficients in x of L_d^nu(-x) = sum_k C(d+nu, d-k) x^k / k!."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    prec = prec or DEFAULT_PREC
    coeffs = []
    for k in range(d + 1):
        c = generalized_binomial(Fraction(nu) + d if _is_exact(nu) else Ball.from_value(nu, prec) + d, d - k, prec)
        coeffs.append(c / factorial(k))
    return IntervalPolynomial(coeffs, prec)


def gaussian_exp_poly(beta: Value, d: int, prec: int | None = None) -> ExpPolynomial:
    """g_d(x) = sum_k (-1)^(d-k) C(d,k) e^{-beta k^2} e^{kx}, as an exponential polynomial."""
    prec = prec or DEFAULT_PREC
    b = Ball.from_value(beta, prec)
    coeffs = []
    for k in range(d + 1):
        c = comb(d, k) * (-1) ** (d - k)
        coeffs.append(B.exp(-(b * (k * k))) * c)
    return ExpPolynomial(1, coeffs, prec)
