"""Arbitrary-precision real balls: an MPFR midpoint plus a rigorous radius.

Every value ``Ball(mid, rad)`` stands for the closed interval
``[mid - rad, mid + rad]``.  MPFR rounds each elementary operation correctly,
so the rounding error of a round-to-nearest result ``m`` at ``p`` bits is at
most half an ulp, which we bound by ``|m| * 2**(1 - p)``.  Radii are kept in
53-bit MPFR numbers rounded upward.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpz

DEFAULT_PREC = int(os.environ.get("DELTALP_PRECISION", "128"))
MAX_PREC = 1024
RAD_PREC = 53

_UP = gmpy2.context(precision=RAD_PREC, round=gmpy2.RoundUp)
_DOWN = gmpy2.context(precision=RAD_PREC, round=gmpy2.RoundDown)
_ZERO = mpfr(0, RAD_PREC)


@lru_cache(maxsize=None)
def contexts(prec: int):
    """Nearest, upward and downward MPFR contexts at ``prec`` bits."""
    return (
        gmpy2.context(precision=prec, round=gmpy2.RoundToNearest),
        gmpy2.context(precision=prec, round=gmpy2.RoundUp),
        gmpy2.context(precision=prec, round=gmpy2.RoundDown),
    )


def _exact_mpfr(n: int) -> mpfr:
    return mpfr(mpz(n), max(RAD_PREC, abs(n).bit_length()))


def _exabs(m: mpfr) -> mpfr:
    # the builtin abs()/neg round to the global 53-bit context
    return contexts(max(m.precision, 2))[0].abs(m)


def _exneg(m: mpfr) -> mpfr:
    return contexts(max(m.precision, 2))[0].minus(m)


def _rounding_error(m: mpfr, prec: int) -> mpfr:
    if m == 0:
        return _ZERO
    return _UP.mul_2exp(_UP.abs(m), 1 - prec)


def frac_up(q: Fraction) -> mpfr:
    """53-bit upper bound of a nonnegative rational."""
    return _UP.div(_exact_mpfr(q.numerator), _exact_mpfr(q.denominator))


def frac_down(q: Fraction) -> mpfr:
    return _DOWN.div(_exact_mpfr(q.numerator), _exact_mpfr(q.denominator))


def _to_fraction(m: mpfr) -> Fraction:
    n, d = m.as_integer_ratio()
    return Fraction(int(n), int(d))


Number = Union["Ball", int, float, Fraction, str]


class Ball:
    """Closed real interval ``[mid - rad, mid + rad]`` at a working precision."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid: mpfr, rad: mpfr = _ZERO, prec: int = DEFAULT_PREC):
        if not gmpy2.is_finite(mid) or not gmpy2.is_finite(rad) or rad < 0:
            raise ArithmeticError(f"invalid ball {mid} +/- {rad}")
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def from_value(cls, x: Number, prec: int = DEFAULT_PREC) -> "Ball":
        if isinstance(x, Ball):
            return x if x.prec >= prec else x.with_prec(prec)
        if isinstance(x, str):
            return parse_constant(x, prec)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            if x.bit_length() <= prec:
                return cls(_exact_mpfr(x), _ZERO, prec)
            return cls._from_ratio(x, 1, prec)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ArithmeticError(f"non-finite value {x}")
            n, d = x.as_integer_ratio()
            return cls._from_ratio(n, d, prec)
        if isinstance(x, Rational):
            return cls._from_ratio(int(x.numerator), int(x.denominator), prec)
        if isinstance(x, (type(mpz(0)),)):
            return cls._from_ratio(int(x), 1, prec)
        if isinstance(x, type(mpfr(0))):
            n, d = x.as_integer_ratio()
            return cls._from_ratio(int(n), int(d), prec)
        raise TypeError(f"cannot convert {type(x).__name__} to Ball")

    @classmethod
    def _from_ratio(cls, n: int, d: int, prec: int) -> "Ball":
        N, _, _ = contexts(prec)
        N.clear_flags()
        mid = N.div(_exact_mpfr(n), _exact_mpfr(d))
        rad = _rounding_error(mid, prec) if N.inexact else _ZERO
        return cls(mid, rad, prec)

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction, prec: int = DEFAULT_PREC) -> "Ball":
        """Smallest convenient ball containing the rational interval ``[lo, hi]``."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        N, _, _ = contexts(prec)
        c = (lo + hi) / 2
        mid = N.div(_exact_mpfr(c.numerator), _exact_mpfr(c.denominator))
        mq = _to_fraction(mid)
        rad = frac_up(max(hi - mq, mq - lo))
        return cls(mid, rad, prec)

    def with_prec(self, prec: int) -> "Ball":
        """Same enclosure with midpoint rounded to ``prec`` bits."""
        if prec == self.prec:
            return self
        N, _, _ = contexts(prec)
        N.clear_flags()
        mid = N.plus(self.mid)
        rad = self.rad
        if N.inexact:
            rad = _UP.add(rad, _rounding_error(mid, prec))
        return Ball(mid, rad, prec)

    # -- inspection ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.rad == 0

    def lower(self) -> mpfr:
        return contexts(self.prec + 8)[2].sub(self.mid, self.rad)

    def upper(self) -> mpfr:
        return contexts(self.prec + 8)[1].add(self.mid, self.rad)

    def abs_upper(self) -> mpfr:
        return contexts(self.prec + 8)[1].add(_exabs(self.mid), self.rad)

    def abs_lower(self) -> mpfr:
        """Lower bound of ``|x|`` over the ball (zero if it straddles zero)."""
        v = contexts(self.prec + 8)[2].sub(_exabs(self.mid), self.rad)
        return v if v > 0 else mpfr(0)

    def interval(self) -> tuple[Fraction, Fraction]:
        """Exact rational endpoints of the enclosure."""
        m = _to_fraction(self.mid)
        r = _to_fraction(self.rad)
        return m - r, m + r

    def sign(self) -> int | None:
        """+1/-1 when certain, 0 for an exact zero, None when ambiguous."""
        if self.rad == 0 and self.mid == 0:
            return 0
        if gmpy2.cmp_abs(self.mid, self.rad) > 0:
            return 1 if self.mid > 0 else -1
        return None

    def contains(self, x: Number) -> bool:
        if isinstance(x, Ball):
            lo, hi = self.interval()
            xl, xh = x.interval()
            return lo <= xl and xh <= hi
        lo, hi = self.interval()
        return lo <= _as_fraction(x) <= hi

    def overlaps(self, other: Number) -> bool:
        o = Ball.from_value(other, self.prec)
        return (self - o).sign() is None or (self - o).sign() == 0

    def certainly_lt(self, other: Number) -> bool:
        return (Ball.from_value(other, self.prec) - self).sign() == 1

    def certainly_le(self, other: Number) -> bool:
        return (Ball.from_value(other, self.prec) - self).sign() in (0, 1)

    def certainly_gt(self, other: Number) -> bool:
        return (self - Ball.from_value(other, self.prec)).sign() == 1

    def certainly_ge(self, other: Number) -> bool:
        return (self - Ball.from_value(other, self.prec)).sign() in (0, 1)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Ball({format_ball(self, 20)})"

    def __str__(self) -> str:
        return format_ball(self)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        return Ball.from_value(other, self.prec)

    def __neg__(self) -> "Ball":
        return Ball(_exneg(self.mid), self.rad, self.prec)

    def __pos__(self) -> "Ball":
        return self

    def __abs__(self) -> "Ball":
        if gmpy2.cmp_abs(self.mid, self.rad) >= 0:
            return Ball(_exabs(self.mid), self.rad, self.prec)
        # straddles zero: enclose [0, |mid| + rad]
        hi = self.abs_upper()
        N, _, _ = contexts(self.prec)
        mid = N.div_2exp(hi, 1)
        rad = _UP.add(_UP.plus(mid), _rounding_error(mid, self.prec))
        return Ball(mid, rad, self.prec)

    def __add__(self, other) -> "Ball":
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        N, _, _ = contexts(prec)
        N.clear_flags()
        mid = N.add(self.mid, other.mid)
        rad = _UP.add(self.rad, other.rad)
        if N.inexact:
            rad = _UP.add(rad, _rounding_error(mid, prec))
        return Ball(mid, rad, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "Ball":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Ball":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Ball":
        if type(other) is int:
            return self._int_op(other, False)
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        N, _, _ = contexts(prec)
        N.clear_flags()
        mid = N.mul(self.mid, other.mid)
        rad = _ZERO
        if self.rad or other.rad:
            rad = _UP.add(
                _UP.add(_UP.mul(_UP.abs(self.mid), other.rad), _UP.mul(_UP.abs(other.mid), self.rad)),
                _UP.mul(self.rad, other.rad),
            )
        if N.inexact:
            rad = _UP.add(rad, _rounding_error(mid, prec))
        return Ball(mid, rad, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Ball":
        if type(other) is int and other:
            return self._int_op(other, True)
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        if gmpy2.cmp_abs(other.mid, other.rad) <= 0:
            raise ZeroDivisionError("divisor ball contains zero")
        N, _, _ = contexts(prec)
        N.clear_flags()
        mid = N.div(self.mid, other.mid)
        err = _rounding_error(mid, prec) if N.inexact else _ZERO
        rad = err
        if self.rad or other.rad:
            # |a/b - am/bm| <= (ar + |am/bm| br) / (|bm| - br)
            q = _UP.add(_UP.abs(mid), err)
            num = _UP.add(self.rad, _UP.mul(q, other.rad))
            den = contexts(prec + 8)[2].sub(_exabs(other.mid), other.rad)
            rad = _UP.add(rad, _UP.div(num, den))
        return Ball(mid, rad, prec)

    def _int_op(self, n: int, divide: bool) -> "Ball":
        # multiply or divide by an exact integer without building a Ball for it
        N, _, _ = contexts(self.prec)
        N.clear_flags()
        m = _exact_mpfr(n)
        if divide:
            mid = N.div(self.mid, m)
            rad = _UP.div(self.rad, _DOWN.abs(m)) if self.rad else _ZERO
        else:
            mid = N.mul(self.mid, m)
            rad = _UP.mul(self.rad, _UP.abs(m)) if self.rad else _ZERO
        if N.inexact:
            rad = _UP.add(rad, _rounding_error(mid, self.prec))
        return Ball(mid, rad, self.prec)

    def __rtruediv__(self, other) -> "Ball":
        return self._coerce(other) / self

    def __pow__(self, n) -> "Ball":
        if isinstance(n, int):
            if n < 0:
                return 1 / (self ** (-n))
            result = Ball(mpfr(1), _ZERO, self.prec)
            base = self
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        return exp(self._coerce(n) * log(self))

    def mul_2exp(self, k: int) -> "Ball":
        """Exact multiplication by ``2**k``."""
        return Ball(contexts(max(self.mid.precision, 2))[0].mul_2exp(self.mid, k), _UP.mul_2exp(self.rad, k), self.prec)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, type(mpfr(0))):
        return _to_fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact number: {x!r}")


def ball(x: Number, prec: int | None = None) -> Ball:
    """Coerce ``x`` to a Ball at ``prec`` bits (default working precision)."""
    return Ball.from_value(x, DEFAULT_PREC if prec is None else prec)


def zero(prec: int = DEFAULT_PREC) -> Ball:
    return Ball(mpfr(0), _ZERO, prec)


def one(prec: int = DEFAULT_PREC) -> Ball:
    return Ball(mpfr(1), _ZERO, prec)


# -- elementary functions ---------------------------------------------------


def _finish(mid: mpfr, inexact: bool, prop: mpfr, prec: int) -> Ball:
    rad = prop
    if inexact:
        rad = _UP.add(rad, _rounding_error(mid, prec))
    return Ball(mid, rad, prec)


def pi(prec: int = DEFAULT_PREC) -> Ball:
    N, _, _ = contexts(prec)
    mid = N.const_pi()
    return Ball(mid, _rounding_error(mid, prec), prec)


def euler_gamma(prec: int = DEFAULT_PREC) -> Ball:
    N, _, _ = contexts(prec)
    mid = N.const_euler()
    return Ball(mid, _rounding_error(mid, prec), prec)


def exp(x: Ball) -> Ball:
    N, U, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.exp(x.mid)
    prop = _ZERO
    if x.rad:
        # |e^(m+h) - e^m| <= e^m (e^r - 1)
        prop = _UP.mul(_UP.exp(x.mid), _UP.expm1(x.rad))
    return _finish(mid, N.inexact, prop, x.prec)


def expm1(x: Ball) -> Ball:
    N, _, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.expm1(x.mid)
    prop = _ZERO
    if x.rad:
        prop = _UP.mul(_UP.exp(x.mid), _UP.expm1(x.rad))
    return _finish(mid, N.inexact, prop, x.prec)


def log(x: Ball) -> Ball:
    lo = x.lower()
    if lo <= 0:
        raise ValueError("log of a ball not contained in (0, inf)")
    N, _, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.log(x.mid)
    prop = _ZERO
    if x.rad:
        prop = _UP.div(x.rad, _DOWN.plus(lo))
    return _finish(mid, N.inexact, prop, x.prec)


def sqrt(x: Ball) -> Ball:
    lo = x.lower()
    if lo < 0:
        raise ValueError("sqrt of a ball reaching below zero")
    N, _, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.sqrt(x.mid)
    prop = _ZERO
    if x.rad:
        if x.mid > 0:
            prop = min(_UP.div(x.rad, _DOWN.sqrt(x.mid)), _UP.sqrt(x.rad))
        else:
            prop = _UP.sqrt(x.rad)
    return _finish(mid, N.inexact, prop, x.prec)


def sin(x: Ball) -> Ball:
    N, _, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.sin(x.mid)
    return _finish(mid, N.inexact, x.rad, x.prec)


def cos(x: Ball) -> Ball:
    N, _, _ = contexts(x.prec)
    N.clear_flags()
    mid = N.cos(x.mid)
    return _finish(mid, N.inexact, x.rad, x.prec)


# -- formatting and parsing -------------------------------------------------


def format_ball(b: Ball, digits: int | None = None) -> str:
    """Decimal ``v ± r`` with ``r`` rounded up to cover the decimal rounding of ``v``."""
    if digits is None:
        digits = max(6, int(b.prec * 0.30103))
    v = Fraction(_to_fraction(b.mid))
    text = _decimal(b.mid, digits)
    shown = Fraction(text)
    total = _to_fraction(b.rad) + abs(shown - v)
    return f"{text} ± {_format_up(total)}"


def _decimal(m: mpfr, digits: int) -> str:
    if m == 0:
        return "0"
    mant, e, _ = m.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    return f"{sign}{mant[0]}.{mant[1:]}e{e - 1}"


def _format_up(r: Fraction) -> str:
    if r == 0:
        return "0"
    e = math.floor(math.log10(r.numerator) - math.log10(r.denominator))
    for exp_ in (e - 2, e - 1, e):
        scale = Fraction(10) ** exp_
        m = math.ceil(r / scale)
        if m < 1000:
            break
    if m * scale < r:
        m += 1
    return f"{m}e{exp_}"


def parse_ball_text(text: str, prec: int = DEFAULT_PREC) -> Ball:
    """Parse ``"v ± r"`` (or a bare constant expression) back to a Ball."""
    if "±" in text:
        v, r = text.split("±")
        lo_hi = Fraction(v.strip())
        rad = Fraction(r.strip())
        return Ball.from_interval(lo_hi - rad, lo_hi + rad, prec)
    return parse_constant(text, prec)


def parse_constant(text: str, prec: int = DEFAULT_PREC) -> Ball:
    """Evaluate a small constant expression such as ``pi2/6`` or ``-5.047``."""
    import ast

    names = {"pi": lambda: pi(prec), "pi2": lambda: pi(prec) ** 2,
             "e": lambda: exp(one(prec)), "euler": lambda: euler_gamma(prec)}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            # decimal literals are taken exactly as written
            return Ball.from_value(Fraction(ast.get_source_segment(text, node) or repr(node.value)), prec)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
            if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant) and isinstance(node.right.value, int):
                return a ** node.right.value
        raise ValueError(f"unsupported constant expression: {text!r}")

    text = text.strip()
    try:
        return Ball.from_value(Fraction(text), prec)
    except (ValueError, ZeroDivisionError):
        pass
    return ev(ast.parse(text, mode="eval"))


def parse_number(text: str, prec: int = DEFAULT_PREC) -> "Fraction | Ball":
    """An exact Fraction for rational literals like ``3/2`` or ``1.49``, else a Ball."""
    try:
        return Fraction(text.strip())
    except ValueError:
        return parse_constant(text, prec)
