"""Interval-coefficient polynomials and certified real-root analysis.

Root isolation converts the coefficient enclosures to integers on a common
power-of-two scale once, then runs Descartes bisection with exact integer
transforms (see ``_kernels_py``).  Polynomials whose coefficients are known
exactly are first split into squarefree factors, so multiple roots are
reported with their multiplicities instead of as unresolved clusters.
"""

from __future__ import annotations

import math

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from . import exact as Q
from . import kernels
from .ball import DEFAULT_PREC, MAX_PREC, Ball, Number
from .errors import AmbiguousDegree, DomainError, PrecisionExhausted


class Status(str, Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"


class Verdict(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    NOT_HYPERBOLIC = "NotHyperbolic"
    UNDETERMINED = "Undetermined"


class RootSign(str, Enum):
    ANY = "Any"
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"


@dataclass(frozen=True)
class RootInterval:
    """Closed interval holding one root; when ``lo < hi`` the endpoints are not roots."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def ball(self, prec: int = DEFAULT_PREC) -> Ball:
        return Ball.from_interval(self.lo, self.hi, prec)

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi


@dataclass(frozen=True)
class Cluster:
    """Unresolved region: Descartes count of the true polynomial lies in ``[vmin, vmax]``."""

    lo: Fraction
    hi: Fraction
    vmin: int
    vmax: int


@dataclass(frozen=True)
class RootIsolation:
    intervals: tuple[RootInterval, ...]
    multiplicities: tuple[int, ...]
    status: Status
    clusters: tuple[Cluster, ...] = ()

    @property
    def certified_count(self) -> int:
        """Number of distinct certified roots."""
        return len(self.intervals)

    @property
    def count_with_multiplicity(self) -> int:
        return sum(self.multiplicities)


@dataclass(frozen=True)
class HyperbolicityReport:
    verdict: Verdict
    roots: RootIsolation
    min_separation: Fraction | None
    precision_bits: int
    reason: str = ""


class IntervalPolynomial:
    """Univariate polynomial ``sum c[i] x**i`` with Ball coefficients.

    When every coefficient is an exact rational (ints, Fractions, or balls of
    radius zero) the exact values are kept alongside in ``exact``.
    """

    __slots__ = ("coeffs", "exact", "prec")

    def __init__(self, coeffs: Iterable[Number], prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = max([c.prec for c in coeffs if isinstance(c, Ball)], default=DEFAULT_PREC)
        self.prec = prec
        exact_vals: list[Fraction] | None = []
        balls = []
        for c in coeffs:
            if isinstance(c, Ball):
                b = c
                if exact_vals is not None:
                    if c.is_exact:
                        exact_vals.append(Fraction(*map(int, c.mid.as_integer_ratio())))
                    else:
                        exact_vals = None
            elif isinstance(c, (int, Fraction)):
                b = Ball.from_value(c, prec)
                if exact_vals is not None:
                    exact_vals.append(Fraction(c))
            else:
                b = Ball.from_value(c, prec)
                exact_vals = None
            balls.append(b)
        while balls and balls[-1].sign() == 0:
            balls.pop()
            if exact_vals:
                exact_vals.pop()
        self.coeffs = tuple(balls)
        self.exact = tuple(exact_vals) if exact_vals is not None else None

    # -- structure ------------------------------------------------------

    @classmethod
    def from_roots(cls, roots: Sequence[Number], lead: Number = 1, prec: int | None = None) -> "IntervalPolynomial":
        if all(isinstance(r, (int, Fraction)) for r in roots) and isinstance(lead, (int, Fraction)):
            return cls(Q.from_roots(roots, Fraction(lead)), prec)
        prec = prec or DEFAULT_PREC
        p = cls([lead], prec)
        for r in roots:
            p = p * cls([-Ball.from_value(r, prec), 1], prec)
        return p

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Index of the leading coefficient (``-1`` for the zero polynomial)."""
        return len(self.coeffs) - 1

    @property
    def degree_certain(self) -> bool:
        return self.is_zero or self.coeffs[-1].sign() is not None

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Ball:
        return self.coeffs[i]

    def __repr__(self) -> str:
        terms = ", ".join(repr(c) for c in self.coeffs)
        return f"IntervalPolynomial([{terms}])"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "IntervalPolynomial") -> "IntervalPolynomial":
        if self.exact is not None and other.exact is not None:
            return IntervalPolynomial(Q.add(self.exact, other.exact), max(self.prec, other.prec))
        n = max(len(self), len(other))
        out = []
        for i in range(n):
            if i < len(self) and i < len(other):
                out.append(self.coeffs[i] + other.coeffs[i])
            else:
                out.append(self.coeffs[i] if i < len(self) else other.coeffs[i])
        return IntervalPolynomial(out, max(self.prec, other.prec))

    def __neg__(self) -> "IntervalPolynomial":
        if self.exact is not None:
            return IntervalPolynomial([-c for c in self.exact], self.prec)
        return IntervalPolynomial([-c for c in self.coeffs], self.prec)

    def __sub__(self, other: "IntervalPolynomial") -> "IntervalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntervalPolynomial":
        if isinstance(other, IntervalPolynomial):
            if self.exact is not None and other.exact is not None:
                return IntervalPolynomial(Q.mul(self.exact, other.exact), max(self.prec, other.prec))
            if not self.coeffs or not other.coeffs:
                return IntervalPolynomial([], self.prec)
            out: list[Ball | None] = [None] * (len(self) + len(other) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    t = a * b
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
            return IntervalPolynomial(out, max(self.prec, other.prec))
        if isinstance(other, (int, Fraction)) and self.exact is not None:
            return IntervalPolynomial([c * other for c in self.exact], self.prec)
        s = Ball.from_value(other, self.prec)
        return IntervalPolynomial([c * s for c in self.coeffs], self.prec)

    __rmul__ = __mul__

    def evaluate(self, x: Number) -> Ball:
        """Horner evaluation in ball arithmetic."""
        x = Ball.from_value(x, self.prec)
        if not self.coeffs:
            return Ball.from_value(0, self.prec)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def taylor_shift(self, c: Number) -> "IntervalPolynomial":
        """Coefficients of ``p(x + c)``."""
        if self.exact is not None and isinstance(c, (int, Fraction)):
            return IntervalPolynomial(Q.taylor_shift(list(self.exact), Fraction(c)), self.prec)
        c = Ball.from_value(c, self.prec)
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] = coeffs[j] + c * coeffs[j + 1]
        return IntervalPolynomial(coeffs, self.prec)

    def reversed(self) -> "IntervalPolynomial":
        if self.exact is not None:
            return IntervalPolynomial(list(self.exact)[::-1], self.prec)
        return IntervalPolynomial(list(self.coeffs)[::-1], self.prec)

    def substitute_neg(self) -> "IntervalPolynomial":
        """Coefficients of ``p(-x)``."""
        if self.exact is not None:
            return IntervalPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.exact)], self.prec)
        return IntervalPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.prec)

    def int_box(self) -> tuple[list[int], list[int]]:
        """Integer midpoints and radii on a common positive scale."""
        if self.exact is not None:
            den = Q.common_denominator(self.exact)
            return [int(c * den) for c in self.exact], [0] * len(self.exact)
        mids = []
        rads = []
        for c in self.coeffs:
            n, d = c.mid.as_integer_ratio()
            mids.append(Fraction(int(n), int(d)))
            n, d = c.rad.as_integer_ratio()
            rads.append(Fraction(int(n), int(d)))
        den = max(q.denominator for q in mids + rads)
        return [int(q * den) for q in mids], [int(q * den) for q in rads]


# -- isolation --------------------------------------------------------------


def _exponent_bounds(q: Fraction) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``2**lo <= |q| < 2**hi`` for nonzero ``q``."""
    n, d = abs(q.numerator), q.denominator
    e = n.bit_length() - d.bit_length()
    # 2**(e-1) < n/d < 2**(e+1)
    return e - 1, e + 1


def _root_bound_exponent(M: Sequence[int], R: Sequence[int]) -> int:
    """``b`` such that every complex root has modulus strictly below ``2**b``."""
    d = len(M) - 1
    lead_lo = abs(M[d]) - R[d]
    if lead_lo <= 0:
        raise AmbiguousDegree("leading coefficient interval contains zero")
    lead_e, _ = _exponent_bounds(Fraction(lead_lo))
    best = None
    for i in range(1, d + 1):
        up = abs(M[d - i]) + R[d - i]
        if up == 0:
            continue
        _, e = _exponent_bounds(Fraction(up))
        # (up/lead)**(1/i) < 2**ceil((e - lead_e)/i)
        k = -((lead_e - e) // i)
        best = k if best is None else max(best, k)
    if best is None:
        best = 0
    # Fujiwara's bound is 2 * max(...); one extra doubling keeps it strict
    return best + 2


def _scale_pow2(M, R, b):
    d = len(M) - 1
    if b >= 0:
        return [m << (b * i) for i, m in enumerate(M)], [r << (b * i) for i, r in enumerate(R)]
    s = -b
    return [m << (s * (d - i)) for i, m in enumerate(M)], [r << (s * (d - i)) for i, r in enumerate(R)]


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational with the smallest denominator in the open interval (lo, hi)."""
    fl = math.floor(lo)
    if fl + 1 < hi:
        if lo < 0 < hi:
            return Fraction(0)
        return Fraction(fl + 1) if lo >= 0 else Fraction(math.ceil(hi) - 1)
    f_lo, f_hi = lo - fl, hi - fl
    if f_lo == 0:
        inner = Fraction(math.floor(1 / f_hi) + 1)
    else:
        inner = _simplest_between(1 / f_hi, 1 / f_lo)
    return fl + 1 / inner


class _SignOracle:
    """Certified signs of ``p`` at rational points, from an integer box."""

    def __init__(self, M: list[int], R: list[int]):
        self.M = M
        self.R = R

    def sign(self, x: Fraction) -> int | None:
        x = Fraction(x)
        return kernels.eval_sign(self.M, self.R, x.numerator, x.denominator)

    def refine(self, iv: RootInterval, width: Fraction) -> RootInterval:
        lo, hi = iv.lo, iv.hi
        if hi - lo <= width:
            return iv
        s_lo = self.sign(lo)
        s_hi = self.sign(hi)
        if s_lo not in (1, -1) or s_hi not in (1, -1) or s_lo == s_hi:
            raise PrecisionExhausted("bracket endpoints lack a certified sign change")
        fracs = (Fraction(1, 2), Fraction(7, 16), Fraction(9, 16), Fraction(3, 8), Fraction(5, 8),
                 Fraction(5, 16), Fraction(11, 16))
        exact = not any(self.R)
        while hi - lo > width:
            if exact:
                # rational roots are only ever reached by testing them directly
                c = _simplest_between(lo, hi)
                if self.sign(c) == 0:
                    return RootInterval(c, c)
            for f in fracs:
                m = lo + (hi - lo) * f
                s = self.sign(m)
                if s in (1, -1):
                    if s == s_lo:
                        lo = m
                    else:
                        hi = m
                    break
            else:
                raise PrecisionExhausted("sign undetermined across the whole bracket")
        return RootInterval(lo, hi)


def _isolate_box(M, R, region: str, max_roots: int | None, max_depth: int, budget: int):
    b = _root_bound_exponent(M, R)
    B = Fraction(2) ** b
    parts = []
    if region == "all":
        if abs(M[0]) > R[0]:
            parts = ["neg", "pos"]
        else:
            parts = ["full"]
    elif region == "negative":
        parts = ["neg"]
    elif region == "positive":
        parts = ["pos"]
    else:
        raise ValueError(f"unknown region {region!r}")

    intervals: list[RootInterval] = []
    clusters: list[Cluster] = []
    exhausted = False
    for part in parts:
        if part == "pos":
            qM, qR = _scale_pow2(M, R, b)

            def to_x(t, B=B):
                return B * t
        elif part == "neg":
            nM, nR = kernels.negate_var(M, R)
            qM, qR = _scale_pow2(nM, nR, b)

            def to_x(t, B=B):
                return -B * t
        else:
            pM, pR = _scale_pow2(M, R, b)
            pM, pR = kernels.taylor_shift(pM, pR, -1)
            qM, qR = kernels.scale(pM, pR, 2, 1)

            def to_x(t, B=B):
                return B * (2 * t - 1)
        remaining = None if max_roots is None else max_roots - len(intervals)
        if remaining is not None and remaining <= 0:
            break
        iso, cl, ex = kernels.isolate01(qM, qR, max_depth, budget, remaining)
        exhausted = exhausted or ex
        for A, Bn, k in iso:
            a, c = to_x(Fraction(A, 1 << k)), to_x(Fraction(Bn, 1 << k))
            intervals.append(RootInterval(min(a, c), max(a, c)))
        for A, Bn, k, vmin, vmax in cl:
            a, c = to_x(Fraction(A, 1 << k)), to_x(Fraction(Bn, 1 << k))
            clusters.append(Cluster(min(a, c), max(a, c), vmin, vmax))
    intervals.sort(key=lambda iv: iv.lo)
    clusters.sort(key=lambda c: c.lo)
    return intervals, clusters, exhausted


def _region_for(root_sign: RootSign | str) -> str:
    rs = RootSign(root_sign)
    return {RootSign.ANY: "all", RootSign.ALL_NEGATIVE: "negative", RootSign.ALL_POSITIVE: "positive"}[rs]


def isolate_real_roots(
    p: IntervalPolynomial,
    min_width: Number | None = None,
    *,
    region: str = "all",
    max_depth: int | None = None,
    budget: int = 50_000,
) -> RootIsolation:
    """Certified isolating intervals for the real roots of ``p``.

    ``region`` restricts the search to ``"negative"`` or ``"positive"`` roots;
    completeness then refers to that half-line.  Intervals are refined to width
    at most ``min_width`` when it is given.
    """
    if p.is_zero:
        raise DomainError("the zero polynomial has no isolated roots")
    if not p.degree_certain:
        raise AmbiguousDegree("leading coefficient interval contains zero")
    if p.degree == 0:
        return RootIsolation((), (), Status.COMPLETE)
    if max_depth is None:
        max_depth = 2 * p.prec + 64
    width = None if min_width is None else _width_fraction(min_width)
    if p.exact is not None:
        return _isolate_exact(list(p.exact), width, region, max_depth, budget)
    M, R = p.int_box()
    intervals, clusters, exhausted = _isolate_box(M, R, region, p.degree, max_depth, budget)
    if width is not None:
        oracle = _SignOracle(M, R)
        intervals = [oracle.refine(iv, width) for iv in intervals]
    complete = (not clusters and not exhausted) or len(intervals) == p.degree
    return RootIsolation(
        tuple(intervals), (1,) * len(intervals),
        Status.COMPLETE if complete else Status.INCOMPLETE, tuple(clusters),
    )


def _width_fraction(w: Number) -> Fraction:
    if isinstance(w, (int, Fraction)):
        return Fraction(w)
    if isinstance(w, float):
        return Fraction(w)
    lo, _ = Ball.from_value(w).interval()
    return lo


def _isolate_exact(coeffs: list[Fraction], width, region, max_depth, budget) -> RootIsolation:
    q = Q.trim(coeffs)
    zero_mult = 0
    while q and q[0] == 0:
        q.pop(0)
        zero_mult += 1
    factors = Q.squarefree_decomposition(q)
    sqf = [Fraction(1)]
    for f, _ in factors:
        sqf = Q.mul(sqf, f)
    intervals: list[RootInterval] = []
    clusters: list[Cluster] = []
    mults: list[int] = []
    exhausted = False
    if len(sqf) > 1:
        den = Q.common_denominator(sqf)
        M = [int(c * den) for c in sqf]
        R = [0] * len(M)
        iv, clusters, exhausted = _isolate_box(M, R, region, len(sqf) - 1, max_depth, budget)
        oracle = _SignOracle(M, R)
        for interval in iv:
            for f, m in factors:
                if Q.evaluate(f, interval.lo) * Q.evaluate(f, interval.hi) < 0:
                    mults.append(m)
                    break
            else:  # pragma: no cover - each root belongs to exactly one factor
                raise AssertionError("root not attributed to a squarefree factor")
            if zero_mult:
                # the zero root was divided out; keep 0 off the endpoints
                while interval.width and (interval.lo == 0 or interval.hi == 0):
                    interval = oracle.refine(interval, interval.width / 2)
            intervals.append(oracle.refine(interval, width) if width is not None else interval)
    if zero_mult and region == "all":
        pos = sum(1 for iv in intervals if iv.hi <= 0)
        intervals.insert(pos, RootInterval(Fraction(0), Fraction(0)))
        mults.insert(pos, zero_mult)
    complete = not clusters and not exhausted
    return RootIsolation(
        tuple(intervals), tuple(mults),
        Status.COMPLETE if complete else Status.INCOMPLETE, tuple(clusters),
    )


def refine_root(p: IntervalPolynomial, bracket: tuple[Number, Number], target_width: Number) -> RootInterval:
    """Shrink a bracket holding exactly one simple root to ``target_width``."""
    lo, hi = (_exact_endpoint(bracket[0]), _exact_endpoint(bracket[1]))
    width = _width_fraction(target_width)
    if p.degree == 1 and p.exact is None:
        root = -p.coeffs[0] / p.coeffs[1]
        rlo, rhi = root.interval()
        out = RootInterval(max(lo, rlo), min(hi, rhi))
        if out.width > width:
            raise PrecisionExhausted("coefficient radii exceed the target width")
        return out
    M, R = p.int_box()
    return _SignOracle(M, R).refine(RootInterval(lo, hi), width)


def _exact_endpoint(x: Number) -> Fraction:
    if isinstance(x, Ball):
        lo, hi = x.interval()
        if lo != hi:
            raise ValueError("bracket endpoints must be exact")
        return lo
    return Fraction(x)


# -- certification ------------------------------------------------------------

# The two-circle figure over an interval of width w has diameter below 2.1 w.
_CLUSTER_DIAMETER = Fraction(21, 10)


def certify_hyperbolic(
    p: IntervalPolynomial,
    root_sign: RootSign | str = RootSign.ANY,
    min_sep: Number | None = None,
    *,
    count_multiplicity: bool = True,
    measure_separation: bool = False,
    gap: Callable[[RootInterval, RootInterval], tuple[Fraction, Fraction]] | None = None,
) -> HyperbolicityReport:
    """Three-valued verdict on whether ``p`` has ``deg p`` real roots.

    With ``min_sep`` the roots must also be simple and pairwise at least
    ``min_sep`` apart; ``root_sign`` restricts where they may lie.  ``gap``
    maps two neighbouring root intervals to bounds on the distance between the
    roots, for separations measured after a monotone change of variable.
    """
    root_sign = RootSign(root_sign)
    prec = p.prec
    empty = RootIsolation((), (), Status.COMPLETE)
    if p.is_zero or p.degree == 0:
        return HyperbolicityReport(Verdict.HYPERBOLIC, empty, None, prec, "vacuous: degree 0 or zero")
    d = p.degree
    iso = isolate_real_roots(p, region=_region_for(root_sign))
    total = iso.count_with_multiplicity
    sep = None if min_sep is None else Ball.from_value(min_sep, prec)

    if total == d:
        if any(m > 1 for m in iso.multiplicities):
            if sep is not None:
                return HyperbolicityReport(Verdict.NOT_HYPERBOLIC, iso, Fraction(0), prec, "multiple root")
            if not count_multiplicity:
                return HyperbolicityReport(Verdict.UNDETERMINED, iso, Fraction(0), prec, "multiple root")
        if sep is None and not measure_separation:
            return HyperbolicityReport(Verdict.HYPERBOLIC, iso, None, prec, f"{d} certified real roots")
        try:
            verdict, iso2, min_gap = _check_separation(p, iso, sep, gap or _plain_gap)
        except PrecisionExhausted:
            return HyperbolicityReport(Verdict.UNDETERMINED, iso, None, prec, "separation refinement failed")
        return HyperbolicityReport(verdict, iso2, min_gap, prec, f"{d} certified real roots" if verdict is Verdict.HYPERBOLIC else "roots closer than required")

    if iso.status is Status.COMPLETE:
        where = "" if root_sign is RootSign.ANY else " of the required sign"
        return HyperbolicityReport(
            Verdict.NOT_HYPERBOLIC, iso, None, prec, f"only {total} of {d} roots are real{where}"
        )
    if sep is not None and gap is None:
        sep_lo, _ = sep.interval()
        for c in iso.clusters:
            if c.vmin >= 2 and _CLUSTER_DIAMETER * (c.hi - c.lo) < sep_lo:
                return HyperbolicityReport(
                    Verdict.NOT_HYPERBOLIC, iso, None, prec, "two roots within a cluster narrower than min_sep"
                )
    return HyperbolicityReport(Verdict.UNDETERMINED, iso, None, prec, f"{len(iso.clusters)} unresolved clusters")


def _plain_gap(a: RootInterval, b: RootInterval) -> tuple[Fraction, Fraction]:
    return b.lo - a.hi, b.hi - a.lo


def _check_separation(p: IntervalPolynomial, iso: RootIsolation, sep: Ball | None, gap):
    oracle = _root_oracle(p)
    ivs = list(iso.intervals)
    if sep is not None:
        sep_lo, sep_hi = sep.interval()
    else:
        sep_lo = sep_hi = None
    floor = Fraction(1, 2 ** (2 * p.prec))
    gaps = []
    for i in range(len(ivs) - 1):
        while True:
            a, b = ivs[i], ivs[i + 1]
            gap_lo, gap_hi = gap(a, b)
            if sep_hi is None:
                if gap_lo > 0 and gap_hi is not None and (gap_hi - gap_lo) * 16 <= gap_lo:
                    break
            else:
                if gap_lo >= sep_hi:
                    break
                if gap_hi is not None and gap_hi < sep_lo:
                    return Verdict.NOT_HYPERBOLIC, _replace(iso, ivs), gap_lo
            if max(a.width, b.width) < floor:
                raise PrecisionExhausted("cannot decide root separation")
            ivs[i] = oracle.refine(a, a.width / 2) if a.width > 0 else a
            ivs[i + 1] = oracle.refine(b, b.width / 2) if b.width > 0 else b
        gaps.append(gap_lo)
    return Verdict.HYPERBOLIC, _replace(iso, ivs), (min(gaps) if gaps else None)


def refine_isolation(
    p: IntervalPolynomial, iso: RootIsolation, done: Callable[[RootInterval], bool]
) -> RootIsolation:
    """Halve each isolating interval until ``done`` accepts it."""
    oracle = _root_oracle(p)
    floor = Fraction(1, 2 ** (2 * p.prec))
    out = []
    for iv in iso.intervals:
        while iv.width > 0 and not done(iv):
            if iv.width < floor:
                raise PrecisionExhausted("refinement reached the precision floor")
            iv = oracle.refine(iv, iv.width / 2)
        out.append(iv)
    return _replace(iso, out)


def _root_oracle(p: IntervalPolynomial) -> _SignOracle:
    if p.exact is not None:
        sqf = [Fraction(1)]
        for f, _ in Q.squarefree_decomposition(list(p.exact)):
            sqf = Q.mul(sqf, f)
        den = Q.common_denominator(sqf)
        return _SignOracle([int(c * den) for c in sqf], [0] * len(sqf))
    return _SignOracle(*p.int_box())


def _replace(iso: RootIsolation, ivs) -> RootIsolation:
    return RootIsolation(tuple(ivs), iso.multiplicities, iso.status, iso.clusters)


def certify_adaptive(
    build: Callable[[int], IntervalPolynomial],
    root_sign: RootSign | str = RootSign.ANY,
    min_sep: Number | Callable[[int], Number] | None = None,
    *,
    start_prec: int = DEFAULT_PREC,
    max_prec: int = MAX_PREC,
    **kwargs,
) -> HyperbolicityReport:
    """Rebuild and recertify at doubled precision until the verdict is decided."""
    prec = start_prec
    while True:
        sep = min_sep(prec) if callable(min_sep) else min_sep
        report = certify_hyperbolic(build(prec), root_sign, sep, **kwargs)
        if report.verdict is not Verdict.UNDETERMINED or prec >= max_prec:
            return report
        prec = min(2 * prec, max_prec)


def binomial_row(d: int) -> list[int]:
    return [comb(d, k) for k in range(d + 1)]
