"""Verification suites producing deterministic JSON reports.

Every case ends as ``pass``, ``fail`` or ``undetermined``.  Cases that are
collected for information only (outside a proved range, or alternative
conventions) are marked ``recorded`` and do not enter the summary counts.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from . import ball as B
from . import exact as Q
from .ball import DEFAULT_PREC, MAX_PREC, Ball, Number
from .constructions import (
    ExpPolynomial,
    SampleWindow,
    SequenceWindow,
    delta_appell_poly,
    gaussian_exp_poly,
    jensen_poly,
    laguerre_poly,
)
from .errors import PrecisionExhausted, SignChangeDetected
from .parallel import ordered_map
from .poly import (
    IntervalPolynomial,
    RootInterval,
    RootSign,
    Verdict,
    _SignOracle,
    certify_adaptive,
    certify_hyperbolic,
    isolate_real_roots,
)
from .specfun import bessel_clifford, bessel_clifford_zeros, gamma_and_reciprocal, r_alpha

PASS, FAIL, UNDETERMINED, RECORDED = "pass", "fail", "undetermined", "recorded"


@dataclass
class Case:
    key: str
    verdict: str
    detail: str = ""


@dataclass
class SuiteReport:
    suite_id: str
    config: dict
    cases: list[Case] = field(default_factory=list)

    def add(self, key: str, verdict: str, detail: str = "") -> None:
        self.cases.append(Case(key, verdict, detail))

    def sorted_cases(self) -> list[Case]:
        return sorted(self.cases, key=lambda c: c.key)

    @property
    def summary(self) -> dict:
        counted = [c for c in self.cases if c.verdict != RECORDED]
        return {
            "run": len(counted),
            "passed": sum(c.verdict == PASS for c in counted),
            "undetermined": sum(c.verdict == UNDETERMINED for c in counted),
            "failed": sum(c.verdict == FAIL for c in counted),
        }

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.sorted_cases() if c.verdict == FAIL]

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def to_dict(self) -> dict:
        return {
            "suite_id": self.suite_id,
            "config": self.config,
            "cases": [{"key": c.key, "verdict": c.verdict, "detail": c.detail} for c in self.sorted_cases()],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _verdict(v: Verdict) -> str:
    return {Verdict.HYPERBOLIC: PASS, Verdict.NOT_HYPERBOLIC: FAIL}.get(v, UNDETERMINED)


def _fmt(x, digits: int = 12) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator < 10**6 else B._decimal(Ball.from_value(x).mid, digits)
    if isinstance(x, Ball):
        return B.format_ball(x, digits)
    return str(x)


def _dyadic(v: float, bits: int = 20) -> Fraction:
    return Fraction(round(v * (1 << bits)), 1 << bits)


def _dyadic_up(v: float, bits: int = 20) -> Fraction:
    return Fraction(math.ceil(v * (1 << bits)), 1 << bits)


# -- delta-difference --------------------------------------------------------------


def random_delta_hyperbolic(rng: random.Random, deg: int, delta: Fraction) -> tuple[list[Fraction], Fraction]:
    """Descending roots with gaps ``delta + |N(0,1)|`` and a random signed leading coefficient."""
    roots = [_dyadic(rng.uniform(-5, 5))]
    for _ in range(deg - 1):
        roots.append(roots[-1] + delta + _dyadic_up(abs(rng.gauss(0, 1))))
    roots.reverse()
    lead = _dyadic(rng.uniform(0.5, 2), 10) * rng.choice((1, -1))
    return roots, lead


def delta_difference_case(
    roots: Sequence[Fraction], lead: Fraction, delta: Fraction, x: Fraction,
    prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC,
) -> tuple[str, str]:
    """Check that e^{delta x} f(t + delta) - f(t) is delta-hyperbolic with the predicted root locations."""
    roots = [Fraction(r) for r in roots]
    d = len(roots)
    if d == 0:
        return PASS, "constant f: g is constant"
    f = Q.from_roots(roots, lead)
    f1 = Q.taylor_shift(f, delta)
    # exact gaps give exact common zeros t_{k+1} of f(t) and f(t + delta)
    points = [roots[k + 1] for k in range(d - 1) if roots[k] - roots[k + 1] == delta]
    q = Q.from_roots(points)
    f0q, r0 = Q.divmod_poly(f, q)
    f1q, r1 = Q.divmod_poly(f1, q)
    assert not r0 and not r1
    p = prec
    while True:
        verdict, detail = _dd_attempt(roots, delta, x, points, f0q, f1q, p)
        if verdict != UNDETERMINED or p >= max_prec:
            return verdict, detail
        p = min(2 * p, max_prec)


def _dd_attempt(roots, delta, x, points, f0q, f1q, prec):
    d = len(roots)
    E = B.exp(Ball.from_value(delta, prec) * Ball.from_value(x, prec))
    n = max(len(f0q), len(f1q))
    coeffs = []
    for i in range(n):
        c1 = f1q[i] if i < len(f1q) else Fraction(0)
        c0 = f0q[i] if i < len(f0q) else Fraction(0)
        coeffs.append(E * Ball.from_value(c1, prec) - Ball.from_value(c0, prec))
    h = IntervalPolynomial(coeffs, prec)
    want = d - len(points)
    if want == 0:
        ivs = []
    else:
        if not h.degree_certain or h.degree != want:
            return UNDETERMINED, "degree of the cofactor is not certain"
        iso = isolate_real_roots(h)
        if iso.certified_count != want:
            if iso.status.value == "Complete":
                return FAIL, f"only {iso.certified_count + len(points)} of {d} real roots"
            return UNDETERMINED, "unresolved clusters"
        ivs = list(iso.intervals)
    oracle = _SignOracle(*h.int_box()) if want else None
    items = [[iv, False] for iv in ivs] + [[RootInterval(r, r), True] for r in points]
    floor = Fraction(1, 2 ** (2 * prec))

    def shrink(i):
        iv, fixed = items[i]
        if fixed or iv.width == 0:
            return False
        if iv.width < floor:
            return False
        items[i][0] = oracle.refine(iv, iv.width / 2)
        return True

    try:
        # isolating intervals must not straddle the exact point roots
        for i in range(len(items)):
            while not items[i][1] and any(items[i][0].lo <= r <= items[i][0].hi for r in points):
                if not shrink(i):
                    return UNDETERMINED, "root too close to an exact gap root"
        items.sort(key=lambda it: it[0].lo, reverse=True)
        # separation, descending order: s_i - s_{i+1} >= delta
        min_gap = None
        for i in range(len(items) - 1):
            while True:
                a, b = items[i][0], items[i + 1][0]
                lo_gap, hi_gap = a.lo - b.hi, a.hi - b.lo
                if lo_gap >= delta:
                    break
                if hi_gap < delta:
                    return FAIL, f"roots {i + 1} and {i + 2} closer than delta"
                if not (shrink(i) | shrink(i + 1)):
                    return UNDETERMINED, "separation undecided at the precision floor"
            min_gap = lo_gap if min_gap is None else min(min_gap, lo_gap)
        # localisation
        extra = d - 1 if x > 0 else 0
        for j in range(d):
            if j == extra:
                lo, hi, strict = (None, roots[-1] - delta, True) if x > 0 else (roots[0], None, True)
            else:
                k = j if x > 0 else j - 1  # root s_{k+1} in [t_{k+2}, t_{k+1} - delta] (0-based)
                lo, hi, strict = roots[k + 1], roots[k] - delta, False
            while True:
                iv = items[j][0]
                inside = (lo is None or (iv.lo > lo if strict else iv.lo >= lo)) and (
                    hi is None or (iv.hi < hi if strict else iv.hi <= hi))
                if inside:
                    break
                outside = (lo is not None and iv.hi < lo) or (hi is not None and iv.lo > hi)
                if outside:
                    return FAIL, f"root {j + 1} outside its predicted interval"
                if not shrink(j):
                    return UNDETERMINED, f"root {j + 1} localisation undecided"
    except PrecisionExhausted as exc:
        return UNDETERMINED, str(exc)
    return PASS, f"deg {d}, {len(points)} exact gaps, min gap >= {_fmt(min_gap) if min_gap is not None else '-'}"


def _edge_cases(delta: Fraction, max_deg: int) -> list[tuple[str, list[Fraction], Fraction, Fraction]]:
    cases = []
    xs = [Fraction(-5), Fraction(-1), Fraction(-1, 1000), Fraction(1, 1000), Fraction(1), Fraction(5)]
    for deg in sorted({1, 2, 3, max(1, max_deg // 2), max_deg}):
        grid = [-k * delta for k in range(deg)]  # every gap exactly delta
        for x in xs:
            cases.append((f"edge/all-exact/deg={deg:02d}/x={x}", grid, Fraction(1), x))
    mixed = [Fraction(0), -delta, -2 * delta - Fraction(1, 2), -3 * delta - Fraction(1, 2), -4 * delta - 2]
    for x in xs:
        cases.append((f"edge/mixed/x={x}", mixed[: max(1, min(len(mixed), max_deg))], Fraction(-3), x))
    cases.append(("edge/constant/x=1", [], Fraction(2), Fraction(1)))
    return cases


def _dd_worker(args):
    key, roots, lead, delta, x, prec, max_prec = args
    verdict, detail = delta_difference_case(roots, lead, delta, x, prec, max_prec)
    return key, verdict, detail


def suite_delta_difference(
    trials: int, max_deg: int, delta: Number, seed: int, *,
    prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC, edge_cases: bool = True, jobs: int = 1,
) -> SuiteReport:
    delta = Fraction(delta) if not isinstance(delta, Ball) else B._to_fraction(delta.mid)
    rng = random.Random(seed)
    work = []
    width = len(str(trials))
    for i in range(trials):
        deg = rng.randint(1, max_deg)
        roots, lead = random_delta_hyperbolic(rng, deg, delta)
        x = Fraction(0)
        while x == 0:
            x = _dyadic(rng.uniform(-5, 5))
        work.append((f"trial/{i:0{width}d}", roots, lead, delta, x, prec, max_prec))
    if edge_cases:
        for key, roots, lead, x in _edge_cases(delta, max_deg):
            work.append((key, roots, lead, delta, x, prec, max_prec))
    report = SuiteReport(
        "delta-difference",
        {"trials": trials, "max_deg": max_deg, "delta": str(delta), "seed": seed, "precision_bits": prec,
         "max_precision_bits": max_prec, "edge_cases": edge_cases},
    )
    for key, verdict, detail in ordered_map(_dd_worker, work, jobs):
        report.add(key, verdict, detail)
    return report


# -- Ono grid ----------------------------------------------------------------------


def _alpha_key(a: Fraction) -> str:
    return f"{float(a):08.4f}"


def _ono_alpha(args):
    alpha, n_max, d_max, prec, max_prec, direct = args
    cases = []
    n_min = max(1, math.ceil(alpha / 24))
    proved = alpha <= Fraction(3, 2)
    cache: dict[tuple[int, int], Ball] = {}

    def R(n: int, p: int) -> Ball:
        if (n, p) not in cache:
            cache[(n, p)] = r_alpha(alpha, n, p)
        return cache[(n, p)]

    for n in range(n_min, n_max + 1):
        for d in range(d_max + 1):
            key = f"alpha={_alpha_key(alpha)}/n={n:03d}/d={d:02d}"

            def build(p, n=n, d=d):
                return jensen_poly(SequenceWindow(n, tuple(R(n + k, p) for k in range(d + 1))), p)

            rep = certify_adaptive(build, RootSign.ALL_NEGATIVE, start_prec=prec, max_prec=max_prec)
            v = _verdict(rep.verdict)
            detail = f"{rep.verdict.value} at {rep.precision_bits} bits"
            cases.append((key + "/jensen", v if proved else RECORDED, detail))
            if direct and alpha <= Fraction(3, 2):
                rep2 = _ono_direct(alpha, n, d, prec, max_prec)
                v2 = _verdict(rep2.verdict)
                cases.append((key + "/direct", v2 if proved else RECORDED,
                              f"{rep2.verdict.value} at {rep2.precision_bits} bits"))
    return cases


def _ono_direct(alpha: Fraction, n: int, d: int, prec: int, max_prec: int):
    """delta-Appell polynomial of C_nu sampled at t0 + k delta with delta = pi^2 alpha / 6."""
    p = prec
    while True:
        w = p + 16
        a = Ball.from_value(alpha, w)
        delta = B.pi(w) ** 2 * a / 6
        t0 = delta * (n - a / 24)
        nu = alpha / 2 + 1
        vals = tuple(bessel_clifford(nu, t0 + delta * k, p) for k in range(d + 1))
        ep = delta_appell_poly(SampleWindow(t0, delta, vals), p)
        rep = ep.certify()
        if rep.verdict is not Verdict.UNDETERMINED or p >= max_prec:
            return rep
        p = min(2 * p, max_prec)


def suite_ono_grid(
    alphas: Sequence[Number], n_max: int = 50, d_max: int = 12, *,
    prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC, direct: bool = True, jobs: int = 1,
) -> SuiteReport:
    from .errors import DomainError

    alphas = [Fraction(a) for a in alphas]
    if any(a <= 0 for a in alphas):
        raise DomainError("every alpha must be positive")
    report = SuiteReport(
        "ono",
        {"alphas": [str(a) for a in alphas], "n_max": n_max, "d_max": d_max, "precision_bits": prec,
         "max_precision_bits": max_prec, "direct": direct, "weighted_alpha": "alpha <= 3/2"},
    )
    work = [(a, n_max, d_max, prec, max_prec, direct) for a in alphas]
    for cases in ordered_map(_ono_alpha, work, jobs):
        for key, v, detail in cases:
            report.add(key, v, detail)
    return report


# -- LP embedding --------------------------------------------------------------


def lp_function(spec: str, prec: int) -> tuple[Callable[[Number], Ball], dict]:
    """Parse ``bessel-clifford:NU``, ``gaussian:BETA`` or ``reciprocal-gamma``."""
    name, _, arg = spec.partition(":")
    if name == "bessel-clifford":
        nu = B.parse_number(arg or "1/2", prec)
        return (lambda t: bessel_clifford(nu, t, prec)), {"f": name, "nu": str(nu)}
    if name == "gaussian":
        beta = B.parse_number(arg or "0", prec)
        bb = Ball.from_value(beta, prec)
        return (lambda t: B.exp(-(bb * Ball.from_value(t, prec) ** 2))), {"f": name, "beta": str(beta)}
    if name == "reciprocal-gamma":
        return (lambda t: gamma_and_reciprocal(t, prec)[1]), {"f": name}
    raise ValueError(f"unknown function {spec!r}")


def suite_lp_embedding(
    f_spec: str, t0: Number, delta: Number, d_max: int, *, prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC,
) -> SuiteReport:
    f, desc = lp_function(f_spec, prec)
    t0q = B.parse_number(t0, prec) if isinstance(t0, str) else t0
    dq = B.parse_number(delta, prec) if isinstance(delta, str) else delta
    window = SampleWindow.from_function(f, t0q, dq, d_max)
    a = window.values
    report = SuiteReport(
        "lp-embed",
        {**desc, "t0": str(t0q), "delta": str(dq), "d_max": d_max, "precision_bits": prec,
         "max_precision_bits": max_prec},
    )
    signs = {Ball.from_value(v, prec).sign() for v in a}
    if None in signs or 0 in signs or len(signs) != 1:
        raise SignChangeDetected("samples are not all of one certified sign")
    for d in range(d_max + 1):
        J = jensen_poly(SequenceWindow(0, tuple(a[: d + 1])), prec)
        rep = certify_hyperbolic(J)
        report.add(f"hyperbolic/d={d:02d}", _verdict(rep.verdict), rep.reason)

    # log-quadratic envelope fit (report only)
    ys = [math.log(abs(float(Ball.from_value(v, prec).mid))) for v in a]
    if len(ys) >= 3:
        c0, c1, c2 = (c + 0.0 for c in _quadfit(list(range(len(ys))), ys))
        report.add("envelope/fit", RECORDED, f"log|a_k| ~ {c0:.6g} + {c1:.6g} k + {c2:.6g} k^2")

    if desc["f"] == "reciprocal-gamma" and isinstance(t0q, (int, Fraction)) and dq == 1:
        nu = Fraction(t0q) - 1
        for d in range(d_max + 1):
            ok = _laguerre_identity(nu, d, [Ball.from_value(v, prec) for v in a[: d + 1]], prec)
            report.add(f"laguerre-identity/d={d:02d}", PASS if ok else FAIL, f"nu = {nu}")
    return report


def _quadfit(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least-squares ``y ~ c0 + c1 x + c2 x^2`` via the 3x3 normal equations."""
    S = [[sum(x ** (i + j) for x in xs) for j in range(3)] for i in range(3)]
    T = [sum(y * x**i for x, y in zip(xs, ys)) for i in range(3)]
    M = [S[i] + [T[i]] for i in range(3)]
    for i in range(3):
        piv = max(range(i, 3), key=lambda r: abs(M[r][i]))
        M[i], M[piv] = M[piv], M[i]
        for r in range(3):
            if r != i:
                f = M[r][i] / M[i][i]
                M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return tuple(M[i][3] / M[i][i] for i in range(3))


def _laguerre_identity(nu: Fraction, d: int, recip: Sequence[Ball], prec: int) -> bool:
    """Gamma(d+nu+1)/d! * C(d,k) / Gamma(nu+k+1) against the coefficients of L_d^nu(-x)."""
    g, _ = gamma_and_reciprocal(nu + d + 1, prec)
    L = laguerre_poly(d, nu, prec)
    for k in range(d + 1):
        lhs = g * comb(d, k) * recip[k] / factorial(d)
        rhs = L.coeffs[k] if k < len(L.coeffs) else Ball.from_value(0, prec)
        if not lhs.overlaps(rhs):
            return False
    return True


# -- Gaussian ---------------------------------------------------------------------


def suite_gaussian(
    beta: Number, d_max: int, *, samples: int = 20, seed: int = 0, recursion_d_max: int = 10,
    prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC,
) -> SuiteReport:
    beta = Fraction(beta) if not isinstance(beta, Ball) else beta
    report = SuiteReport(
        "gaussian",
        {"beta": str(beta), "d_max": d_max, "samples": samples, "seed": seed, "precision_bits": prec,
         "max_precision_bits": max_prec},
    )
    two_beta = 2 * beta
    for d in range(1, d_max + 1):
        p = prec
        while True:
            g = gaussian_exp_poly(beta, d, p)
            rep = g.certify(min_sep=two_beta)
            if rep.verdict is not Verdict.UNDETERMINED or p >= max_prec:
                break
            p = min(2 * p, max_prec)
        sep = rep.min_separation
        report.add(f"separation/d={d:02d}", _verdict(rep.verdict),
                   f"{rep.verdict.value}; min gap >= {_fmt(sep) if sep is not None else '-'} at {p} bits")
        if d == 1 and rep.verdict is Verdict.HYPERBOLIC:
            x = g.x_roots(rep)[0]
            report.add("closed-form/d=01", PASS if x.overlaps(beta) else FAIL, f"root {_fmt(x)}")

    rng = random.Random(seed)
    xs = [_dyadic(rng.uniform(-5, 5)) for _ in range(samples)]
    bb = Ball.from_value(beta, prec)
    for d in range(0, min(recursion_d_max, d_max)):
        gd = gaussian_exp_poly(beta, d, prec)
        gd1 = gaussian_exp_poly(beta, d + 1, prec)
        ok = printed = 0
        for x in xs:
            xb = Ball.from_value(x, prec)
            shifted = B.exp(xb - bb) * gd.evaluate(xb - 2 * bb)
            if (gd1.evaluate(xb) - (shifted - gd.evaluate(xb))).contains(0):
                ok += 1
            if (gd1.evaluate(xb) - (gd.evaluate(xb) - shifted)).contains(0):
                printed += 1
        report.add(f"recursion/d={d:02d}", PASS if ok == len(xs) else FAIL,
                   f"g_(d+1) = e^(x-beta) g_d(x-2beta) - g_d(x) at {ok}/{len(xs)} points")
        report.add(f"recursion-printed-sign/d={d:02d}", RECORDED,
                   f"g_(d+1) = g_d(x) - e^(x-beta) g_d(x-2beta) at {printed}/{len(xs)} points")
    return report


# -- delta-Laguerre -----------------------------------------------------------


def laguerre_delta_sequence(nu: Fraction, delta: Fraction, d: int, convention: str, prec: int) -> list[Ball]:
    """a_k = 1/Gamma(delta (nu + 1 + k)) ("shift") or 1/Gamma(nu + 1 + delta k) ("scaled")."""
    out = []
    for k in range(d + 1):
        arg = delta * (nu + 1 + k) if convention == "shift" else nu + 1 + delta * k
        out.append(gamma_and_reciprocal(arg, prec)[1])
    return out


def suite_laguerre_delta(
    nu: Number, delta_list: Sequence[Number], d_max: int, *, prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC,
) -> SuiteReport:
    from .errors import DomainError

    nu = Fraction(nu)
    deltas = [Fraction(x) for x in delta_list]
    if nu <= -1 or any(x <= 0 for x in deltas):
        raise DomainError("need nu > -1 and every delta > 0")
    report = SuiteReport(
        "laguerre",
        {"nu": str(nu), "deltas": [str(x) for x in deltas], "d_max": d_max, "precision_bits": prec,
         "max_precision_bits": max_prec, "weighted_convention": "shift"},
    )
    for delta in deltas:
        for conv in ("shift", "scaled"):
            for d in range(d_max + 1):
                def build(p, d=d):
                    return jensen_poly(SequenceWindow(0, tuple(laguerre_delta_sequence(nu, delta, d, conv, p))), p)

                rep = certify_adaptive(build, start_prec=prec, max_prec=max_prec)
                v = _verdict(rep.verdict)
                weighted = conv == "shift" and delta <= 1
                report.add(f"delta={float(delta):.4f}/{conv}/d={d:02d}", v if weighted else RECORDED,
                           f"{rep.verdict.value} at {rep.precision_bits} bits")
        if delta == 1:
            for d in range(d_max + 1):
                ok = _laguerre_identity(nu, d, laguerre_delta_sequence(nu, delta, d, "shift", prec), prec)
                report.add(f"identity/d={d:02d}", PASS if ok else FAIL, f"nu = {nu}")
    return report


# -- Bessel-Clifford zeros ----------------------------------------------------------


def suite_zeros(nus: Sequence[Number], K: int = 20, *, prec: int = DEFAULT_PREC) -> SuiteReport:
    nus = [Fraction(v) for v in nus]
    report = SuiteReport("zeros", {"nus": [str(v) for v in nus], "K": K, "precision_bits": prec})
    bound = B.pi(prec) ** 2 / 4
    b_hi = bound.interval()[1]
    tol = Fraction(1, 10**20)
    for nu in nus:
        table = bessel_clifford_zeros(nu, K, prec)
        for k, gap in enumerate(table.separation_lower_bounds(), 1):
            report.add(f"nu={float(nu):.4f}/gap={k:02d}", PASS if gap > b_hi else FAIL,
                       f"r_{k + 1} - r_{k} >= {_fmt(gap)}")
        if nu == Fraction(1, 2):
            pi2 = B.pi(prec) ** 2
            for k, z in enumerate(table.zeros, 1):
                err = abs(z - pi2 * (k * k) / 4)
                ok = err.certainly_le(Ball.from_value(tol, prec))
                report.add(f"nu={float(nu):.4f}/closed-form={k:02d}", PASS if ok else FAIL,
                           f"|r_k - k^2 pi^2/4| <= {B._format_up(err.interval()[1])}")
    return report
