"""Root curves of delta-Appell polynomials in the (x, t) plane.

For fixed x != 0 the delta-Appell polynomial of ``f`` is an ordinary
polynomial in ``t`` of the same degree ``n`` as ``f``, so every grid column is
a certified isolation problem.  Branch ``k`` is the k-th largest zero for
``x < 0`` and the (k - d)-th largest for ``x > 0``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, TextIO

from . import ball as B
from .ball import DEFAULT_PREC, MAX_PREC, Ball, Number
from .errors import BranchJumpDetected, GridMismatch, PrecisionExhausted
from .parallel import ordered_map
from .poly import IntervalPolynomial, isolate_real_roots


class Domain(str, Enum):
    NEG = "NegAxis"
    FULL = "FullLine"
    POS = "PosAxis"


@dataclass
class RootCurve:
    k: int
    domain: Domain
    samples: list[tuple[Fraction, Ball]] = field(default_factory=list)

    def at(self, x: Fraction) -> Ball | None:
        for xs, t in self.samples:
            if xs == x:
                return t
        return None


@dataclass
class CurveFamily:
    d: int
    delta: Ball
    branches: list[RootCurve]
    source_roots: tuple[Ball, ...]
    grid: tuple[Fraction, ...]
    prec: int = DEFAULT_PREC

    @property
    def n(self) -> int:
        return len(self.source_roots)

    def branch(self, k: int) -> RootCurve:
        return self.branches[k - 1]

    def labels_at(self, x: Fraction) -> range:
        n, d = self.n, self.d
        return range(1, n + 1) if x < 0 else range(d + 1, n + d + 1)


def default_grid(delta: Number, x_min: float = 0.05, x_far: float = 10.0, points: int = 40) -> list[Fraction]:
    """Geometric grid in |x| from ``x_min/delta`` to ``x_far/delta`` on both sides."""
    dl = float(Ball.from_value(delta, 64).mid)
    lo, hi = x_min / dl, x_far / dl
    r = (hi / lo) ** (1 / (points - 1))
    mags = [_dyadic(lo * r**i) for i in range(points)]
    mags[-1] = _dyadic(hi)
    return [-m for m in reversed(mags)] + mags


def _dyadic(v: float, bits: int = 30) -> Fraction:
    return Fraction(round(v * (1 << bits)), 1 << bits)


class _Columns:
    """Zeros in t of the delta-Appell polynomial at a given x."""

    def __init__(self, roots: Sequence[Ball], delta: Ball, d: int, prec: int):
        self.roots = tuple(roots)
        self.delta = delta
        self.d = d
        self.prec = prec
        self._shifted: dict[int, list[IntervalPolynomial]] = {}

    def shifted(self, prec: int) -> list[IntervalPolynomial]:
        if prec not in self._shifted:
            f = IntervalPolynomial.from_roots([Ball.from_value(r, prec) for r in self.roots], 1, prec)
            dl = self.delta.with_prec(prec)
            self._shifted[prec] = [f.taylor_shift(dl * k) if k else f for k in range(self.d + 1)]
        return self._shifted[prec]

    def polynomial(self, x: Number, prec: int) -> IntervalPolynomial:
        fs = self.shifted(prec)
        xb = Ball.from_value(x, prec)
        y = B.exp(self.delta.with_prec(prec) * xb)
        total = None
        w = B.one(prec)
        for k in range(self.d + 1):
            term = fs[k] * (w * (comb(self.d, k) * (-1) ** (self.d - k)))
            total = term if total is None else total + term
            w = w * y
        return total

    def __call__(self, x: Number) -> list[Ball]:
        n = len(self.roots)
        if self.d == 0:
            return [Ball.from_value(r, self.prec) for r in self.roots]
        prec = self.prec
        while True:
            p = self.polynomial(x, prec)
            try:
                iso = isolate_real_roots(p)
                if iso.certified_count == n:
                    ivs = []
                    for iv in iso.intervals:
                        tol = Fraction(1, 1 << 60) * max(1, abs(iv.lo), abs(iv.hi))
                        ivs.append(_refine(p, iv, tol))
                    return [iv.ball(self.prec) for iv in reversed(ivs)]
            except PrecisionExhausted:
                pass
            if prec >= MAX_PREC:
                raise PrecisionExhausted(f"cannot isolate the {n} zeros at x = {float(Ball.from_value(x).mid)}")
            prec = min(2 * prec, MAX_PREC)


def _refine(p, iv, tol):
    from .poly import refine_root

    return refine_root(p, (iv.lo, iv.hi), tol) if iv.width > tol else iv


def _check_roots(roots: Sequence[Ball], delta: Ball) -> None:
    for a, b in zip(roots, roots[1:]):
        if (a - b - delta).sign() == -1:
            raise ValueError("roots must be strictly descending with gaps of at least delta")


def trace_root_curves(
    roots: Sequence[Number],
    delta: Number,
    d: int,
    grid: Iterable[Number] | None = None,
    *,
    prec: int = DEFAULT_PREC,
    jobs: int = 1,
    min_step: Fraction = Fraction(1, 1 << 20),
) -> CurveFamily:
    """Sample every branch of the root curves on ``grid`` (x = 0 excluded)."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    delta_b = Ball.from_value(delta, prec)
    roots_b = tuple(Ball.from_value(r, prec) for r in roots)
    _check_roots(roots_b, delta_b)
    xs = sorted({Fraction(x) for x in (grid if grid is not None else default_grid(delta_b))})
    if any(x == 0 for x in xs):
        raise ValueError("the grid must exclude x = 0")
    n = len(roots_b)
    columns = _Columns(roots_b, delta_b, d, prec)
    values = dict(zip(xs, ordered_map(columns, xs, jobs)))

    neg = [x for x in xs if x < 0]
    pos = [x for x in xs if x > 0]
    # walk away from the origin-adjacent ends toward the finite limits
    _stitch(neg, values, columns, min_step)
    _stitch(pos, values, columns, min_step)

    branches = []
    for k in range(1, n + d + 1):
        dom = Domain.NEG if k <= d else (Domain.POS if k > n else Domain.FULL)
        branches.append(RootCurve(k, dom if d else Domain.FULL))
    for x in xs:
        labels = range(1, n + 1) if x < 0 else range(d + 1, n + d + 1)
        for k, t in zip(labels, values[x]):
            branches[k - 1].samples.append((x, t))
    return CurveFamily(d, delta_b, branches, roots_b, tuple(xs), prec)


def _stitch(xs: list[Fraction], values: dict, columns: _Columns, min_step: Fraction) -> None:
    """Check that secant predictions land on the same-ranked zero; refine the step if not."""
    i = 2
    while i < len(xs):
        x0, x1, x2 = xs[i - 2], xs[i - 1], xs[i]
        cur = values[x2]
        bad = False
        for j in range(len(cur)):
            t0, t1 = float(values[x0][j].mid), float(values[x1][j].mid)
            pred = t1 + (t1 - t0) * float((x2 - x1) / (x1 - x0))
            nearest = min(range(len(cur)), key=lambda m: abs(float(cur[m].mid) - pred))
            if nearest != j:
                bad = True
                break
        if not bad:
            i += 1
            continue
        if abs(x2 - x1) < min_step:
            raise BranchJumpDetected(f"branch assignment inconsistent near x = {float(x2)}")
        xm = (x1 + x2) / 2
        values[xm] = columns(xm)
        xs.insert(i, xm)


@dataclass
class InterlacingReport:
    checked: int
    violations: list[tuple[Fraction, int, str]]
    undecided: list[tuple[Fraction, int, str]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_interlacing(fam_d: CurveFamily, fam_dm1: CurveFamily) -> InterlacingReport:
    """tau_{d,k+1} + delta <= tau_{d-1,k} <= tau_{d,k} wherever all three are defined."""
    if fam_d.d != fam_dm1.d + 1:
        raise GridMismatch("families must have consecutive degrees")
    if fam_d.grid != fam_dm1.grid:
        raise GridMismatch("families were sampled on different grids")
    if fam_d.n != fam_dm1.n or (fam_d.delta - fam_dm1.delta).sign() not in (0, None):
        raise GridMismatch("families come from different data")
    delta = fam_d.delta
    checked = 0
    violations = []
    undecided = []
    n, d = fam_d.n, fam_d.d
    for x in fam_d.grid:
        for k in range(1, n + d):
            hi = fam_d.branch(k).at(x)
            lo = fam_d.branch(k + 1).at(x)
            mid = fam_dm1.branch(k).at(x) if k <= len(fam_dm1.branches) else None
            if hi is None or lo is None or mid is None:
                continue
            checked += 1
            for name, small, big in (("lower", lo + delta, mid), ("upper", mid, hi)):
                s = (big - small).sign()
                if s == -1:
                    violations.append((x, k, name))
                elif s is None:
                    undecided.append((x, k, name))
    return InterlacingReport(checked, violations, undecided)


@dataclass
class LimitReport:
    entries: list[dict]
    escapes: list[dict]

    @property
    def ok(self) -> bool:
        return all(e["ok"] for e in self.entries)

    @property
    def escapes_ok(self) -> bool:
        return all(e["ok"] for e in self.escapes)


def check_limits(fam: CurveFamily, x_far: Number, tol: Number, escape_factor: int = 10) -> LimitReport:
    """Compare branches at -x_far and +x_far with their limits; report divergent ends.

    The zeros at +-x_far are computed directly; the escape check uses the grid
    points nearest the origin.
    """
    n, d = fam.n, fam.d
    delta = fam.delta
    tol_b = Ball.from_value(tol, fam.prec)
    xf = Ball.from_value(x_far, fam.prec)
    columns = _Columns(fam.source_roots, delta, d, fam.prec)
    entries = []
    left = columns(-xf)
    for k, t in zip(range(1, n + 1), left):
        target = fam.source_roots[k - 1]
        err = abs(t - target)
        entries.append({"side": "-", "k": k, "t": t, "target": target, "ok": err.certainly_le(tol_b)})
    right = columns(xf)
    for k, t in zip(range(d + 1, n + d + 1), right):
        target = fam.source_roots[k - d - 1] - delta * d
        err = abs(t - target)
        entries.append({"side": "+", "k": k, "t": t, "target": target, "ok": err.certainly_le(tol_b)})

    escapes = []
    if d > 0:
        top = fam.source_roots[0] + delta * (escape_factor * d)
        bottom = fam.source_roots[-1] - delta * (escape_factor * d)
        neg = [x for x in fam.grid if x < 0]
        pos = [x for x in fam.grid if x > 0]
        if neg:
            x0 = max(neg)
            for k in range(1, d + 1):
                t = fam.branch(k).at(x0)
                escapes.append({"x": x0, "k": k, "t": t, "threshold": top, "ok": t.certainly_gt(top)})
        if pos:
            x0 = min(pos)
            for k in range(n + 1, n + d + 1):
                t = fam.branch(k).at(x0)
                escapes.append({"x": x0, "k": k, "t": t, "threshold": bottom, "ok": t.certainly_lt(bottom)})
    return LimitReport(entries, escapes)


def decimal(value: Number, digits: int) -> str:
    b = Ball.from_value(value, max(DEFAULT_PREC, int(digits * 3.33) + 16))
    return B._decimal(b.mid, digits)


def write_csv(fam: CurveFamily, out: TextIO, digits: int = 20) -> None:
    """Rows ``x,branch_k,t,d`` ordered by branch, then x."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "branch_k", "t", "d"])
    for br in fam.branches:
        for x, t in br.samples:
            w.writerow([decimal(x, digits), br.k, decimal(t, digits), fam.d])


def csv_text(fam: CurveFamily, digits: int = 20) -> str:
    buf = io.StringIO()
    write_csv(fam, buf, digits)
    return buf.getvalue()


def laguerre_scaled_roots(d: int, nu: Number, scale: Number, prec: int = DEFAULT_PREC) -> list[Ball]:
    """Zeros of L_d^nu(-t/scale), descending."""
    from .constructions import laguerre_poly

    L = laguerre_poly(d, nu, prec)  # coefficients in x of L(-x)
    s = Fraction(scale) if isinstance(scale, (int, Fraction)) else None
    if s is not None and L.exact is not None:
        p = IntervalPolynomial([c / s**k for k, c in enumerate(L.exact)], prec)
    else:
        sb = Ball.from_value(scale, prec)
        p = IntervalPolynomial([c / sb**k for k, c in enumerate(L.coeffs)], prec)
    iso = isolate_real_roots(p, Fraction(1, 1 << (prec - 16)))
    return [iv.ball(prec) for iv in reversed(iso.intervals)]
