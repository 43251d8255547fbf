"""Gamma, Bessel-Clifford functions and their zeros, R_alpha, partition tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from . import ball as B
from .ball import DEFAULT_PREC, Ball, Number, contexts
from .errors import BracketFailure, DomainError, PrecisionExhausted
from .poly import RootInterval

# location and value of the positive minimum of Gamma, rounded outward
_XMIN_LO = Fraction("1.4616321449683622")
_XMIN_HI = Fraction("1.4616321449683624")
_GMIN_LO = Fraction("0.8856031944108886")


def _b(x: Number, prec: int) -> Ball:
    return Ball.from_value(x, prec)


def _exact_value(x: Number) -> Fraction | None:
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Ball) and x.is_exact:
        return B._to_fraction(x.mid)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return None
    return None


# -- Gamma ---------------------------------------------------------------------


def _gamma_closed_form(q: Fraction, prec: int) -> Ball | None:
    """Exact forms at integers and half-integers (``None`` for other points)."""
    if q.denominator == 1:
        n = q.numerator
        return _b(math.factorial(n - 1), prec)
    if q.denominator == 2:
        n = (q.numerator - 1) // 2  # q = n + 1/2
        sp = B.sqrt(B.pi(prec + 16))
        if n >= 0:
            c = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
        else:
            m = -n
            c = Fraction((-4) ** m * math.factorial(m), math.factorial(2 * m))
        return (sp * _b(c, prec + 16)).with_prec(prec)
    return None


def _mpfr_bounds_ball(lo: mpfr, hi: mpfr, prec: int) -> Ball:
    return Ball.from_interval(B._to_fraction(lo), B._to_fraction(hi), prec)


def _gamma_positive(z: Ball) -> Ball:
    prec = z.prec
    _, U, D = contexts(prec + 8)
    lo, hi = z.interval()
    zl, zh = z.lower(), z.upper()
    if hi < _XMIN_LO:
        g_lo, g_hi = D.gamma(zh), U.gamma(zl)
    elif lo > _XMIN_HI:
        g_lo, g_hi = D.gamma(zl), U.gamma(zh)
    else:
        g_lo = B.frac_down(_GMIN_LO)
        g_hi = max(U.gamma(zl), U.gamma(zh))
    return _mpfr_bounds_ball(g_lo, g_hi, prec)


def gamma(z: Number, prec: int | None = None) -> Ball | None:
    """Enclosure of Gamma(z); ``None`` at a pole."""
    prec = prec or (z.prec if isinstance(z, Ball) else DEFAULT_PREC)
    q = _exact_value(z)
    if q is not None:
        if q.denominator == 1 and q <= 0:
            return None
        closed = _gamma_closed_form(q, prec)
        if closed is not None:
            return closed
    zb = _b(z, prec)
    lo, hi = zb.interval()
    if lo > 0:
        return _gamma_positive(zb)
    if math.floor(hi) >= math.ceil(lo) and math.ceil(lo) <= 0:
        raise PrecisionExhausted("argument enclosure contains a pole of Gamma")
    # reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    w = prec + 16
    zw = zb.with_prec(w)
    s = B.sin(B.pi(w) * zw)
    g = _gamma_positive(1 - zw)
    return (B.pi(w) / (s * g)).with_prec(prec)


def gamma_and_reciprocal(z: Number, prec: int | None = None) -> tuple[Ball | None, Ball]:
    """``(Gamma(z), 1/Gamma(z))``; at poles ``(None, 0)``."""
    prec = prec or (z.prec if isinstance(z, Ball) else DEFAULT_PREC)
    g = gamma(z, prec)
    if g is None:
        return None, B.zero(prec)
    return g, 1 / g


def reciprocal_gamma_product(z: Number, n_factors: int = 10_000, prec: int | None = None) -> Ball:
    """Independent enclosure of 1/Gamma(z) from the Weierstrass product.

    ``z e^{gamma z} prod_{n<=N} (1 + z/n) e^{-z/n}`` times a rigorously bounded
    tail ``exp(-z^2 S2 / 2 + rho)`` with ``S2 = sum_{n>N} n^-2``.
    """
    prec = prec or (z.prec if isinstance(z, Ball) else DEFAULT_PREC)
    w = prec + 32
    zb = _b(z, w)
    N = n_factors
    zmax = B._to_fraction(zb.abs_upper())
    if zmax > Fraction(N + 1, 2):
        raise DomainError("too few factors for a convergent tail bound")
    prod = B.one(w)
    harmonic = B.zero(w)
    for n in range(1, N + 1):
        prod = prod * (1 + zb / n)
        harmonic = harmonic + _b(Fraction(1, n), w)
    val = zb * B.exp(B.euler_gamma(w) * zb - zb * harmonic) * prod
    # tail: log(1+u) - u = -u^2/2 + rho(u), |rho| <= (2/3)|u|^3 for |u| <= 1/2
    s2 = Ball.from_interval(Fraction(1, N + 1), Fraction(1, N), w)
    rho = Fraction(1, 3) * zmax**3 / N**2
    expo = -(zb * zb) * s2 / 2 + Ball.from_interval(-rho, rho, w)
    return (val * B.exp(expo)).with_prec(prec)


# -- Bessel-Clifford -----------------------------------------------------------


def bessel_clifford(nu: Number, t: Number, prec: int | None = None) -> Ball:
    """C_nu(t) = sum_k t^k / (Gamma(nu + k + 1) k!), summed with a rigorous tail."""
    prec = prec or DEFAULT_PREC
    t_hi = float(_b(t, 64).abs_upper())
    guard = 24
    if _b(t, 64).lower() < 0:
        guard += int(math.ceil(2 * math.sqrt(t_hi) * math.log2(math.e))) + 8
    w = prec + guard
    nub = _b(nu, w)
    if not nub.certainly_gt(-1):
        raise DomainError("order must exceed -1")
    tb = _b(t, w)
    term = 1 / gamma(nub + 1, w)
    total = term
    biggest = term.abs_upper()
    cap = 10 * (int(t_hi) + 1 + prec)
    t_up = tb.abs_upper()
    nu_down = nub.lower()
    eps = gmpy2.mul_2exp(mpfr(1), -(w - 16))
    half = mpfr(0.5)
    k = 0
    nq = _exact_value(nu)
    while True:
        if nq is not None:
            # (nu + k + 1)(k + 1) = (a + b (k + 1))(k + 1) / b for nu = a/b
            term = (term * tb * nq.denominator) / ((nq.numerator + nq.denominator * (k + 1)) * (k + 1))
        else:
            term = term * tb / ((nub + (k + 1)) * (k + 1))
        k += 1
        mag = term.abs_upper()
        if mag > biggest:
            biggest = mag
        # |term_{j+1} / term_j| <= ratio for all j >= k
        ratio = B._UP.div(t_up, B._DOWN.mul(k + 1, B._DOWN.add(nu_down, k + 1)))
        if ratio < half:
            tail = B._UP.div(mag, B._DOWN.sub(1, ratio))
            if tail <= B._UP.mul(eps, biggest):
                total = total + Ball(mpfr(0), tail, w)
                return total.with_prec(prec)
        total = total + term
        if k > cap:
            raise PrecisionExhausted("Bessel-Clifford series did not reach its tail regime")


@lru_cache(maxsize=256)
def _cbound(mu: Fraction, r_lo: Fraction) -> Fraction:
    """Upper bound of |C_mu(-r)| for r >= r_lo, mu >= 0 (from |J_mu| estimates)."""
    # |C_mu(-r)| <= 1/Gamma(mu+1) and <= r^(-mu/2)
    g = gamma(mu + 1, 64)
    b1 = B._to_fraction(g.lower())
    best = 1 / b1 if b1 > 0 else None
    if r_lo > 0 and mu >= 0:
        lb = Fraction(math.exp(-float(mu) / 2 * math.log(float(r_lo)))) * Fraction(1001, 1000)
        best = lb if best is None else min(best, lb)
    if best is None:
        raise PrecisionExhausted("no bound for Bessel-Clifford derivative")
    return best


@dataclass(frozen=True)
class ZeroTable:
    nu: Ball
    intervals: tuple[RootInterval, ...]
    prec: int

    @property
    def zeros(self) -> list[Ball]:
        return [iv.ball(self.prec) for iv in self.intervals]

    @property
    def separations(self) -> list[Ball]:
        z = self.zeros
        return [z[i + 1] - z[i] for i in range(len(z) - 1)]

    def separation_lower_bounds(self) -> list[Fraction]:
        iv = self.intervals
        return [iv[i + 1].lo - iv[i].hi for i in range(len(iv) - 1)]


class _ZeroCounter:
    def __init__(self, nu: Ball, nu_q: Fraction, prec: int):
        self.nu = nu
        self.nu_q = nu_q
        self.prec = prec

    def F(self, r: Fraction, order: int = 0) -> Ball:
        return bessel_clifford(self.nu + order, -r, self.prec)

    def pieces(self, a: Fraction, b: Fraction, sa: int, depth: int = 0):
        """Yield ``(lo, hi)`` brackets holding one zero each, in order, on (a, b]."""
        stack = [(a, b, sa, depth)]
        out = []
        while stack:
            a, b, sa, depth = stack.pop()
            if depth > 60:
                raise PrecisionExhausted("zero certification did not converge")
            fb = self.F(b)
            sb = fb.sign()
            if sb in (None, 0):
                raise PrecisionExhausted("ambiguous sign at a breakpoint")
            m = (a + b) / 2
            h = (b - a) / 2
            fm = self.F(m)
            L1 = _cbound(self.nu_q + 1, a)
            if B._to_fraction(fm.abs_lower()) > L1 * h:
                if sa != sb:
                    raise BracketFailure("inconsistent signs on a zero-free piece")
                out.append((a, b, 0, sb))
                continue
            d1 = self.F(m, 1)
            L2 = _cbound(self.nu_q + 2, a)
            if B._to_fraction(d1.abs_lower()) > L2 * h:
                out.append((a, b, 1 if sa != sb else 0, sb))
                continue
            # bisect; recompute the midpoint sign for the right half
            sm = fm.sign()
            if sm in (None, 0):
                m = a + (b - a) * Fraction(7, 16)
                sm = self.F(m).sign()
                if sm in (None, 0):
                    raise PrecisionExhausted("ambiguous sign while subdividing")
            stack.append((m, b, sm, depth + 1))
            stack.append((a, m, sa, depth + 1))
        return out


def _mcmahon(nu: float, k: int) -> float:
    """Heuristic seed for the k-th zero of J_nu (used only to place breakpoints)."""
    b = (k + nu / 2 - 0.25) * math.pi
    return b - (4 * nu * nu - 1) / (8 * b)


def bessel_clifford_zeros(nu: Number, K: int, prec: int | None = None) -> ZeroTable:
    """First ``K`` zeros of C_nu, returned as r_k = |t_k| in increasing order."""
    prec = prec or DEFAULT_PREC
    if K < 1:
        raise ValueError("K must be positive")
    nub = _b(nu, prec)
    if not nub.certainly_gt(-1):
        raise DomainError("order must exceed -1")
    nu_q = _exact_value(nu)
    if nu_q is None:
        raise DomainError("zero certification needs an exact rational order")
    nu_f = float(nu_q)
    counter = _ZeroCounter(nub, nu_q, prec)
    coarse = _ZeroCounter(_b(nu_q, 64), nu_q, 64)
    brackets: list[tuple[Fraction, Fraction]] = []
    a = Fraction(0)
    sa = 1  # C_nu(0) = 1/Gamma(nu+1) > 0
    k = 1
    attempts = 0
    while len(brackets) < K:
        # breakpoints near extrema of C_nu(-r), i.e. zeros of C_{nu+1}
        b = Fraction(_mcmahon(nu_f + 1, k) ** 2 / 4).limit_denominator(1 << 20)
        if b <= a:
            b = a + 1
        found = coarse.pieces(a, b, sa)
        for lo, hi, n, s in found:
            if n:
                brackets.append((lo, hi))
        sa = found[-1][3]
        a = b
        k += 1
        attempts += 1
        if attempts > 4 * K + 20:
            raise BracketFailure("could not bracket the requested zeros")
    brackets = brackets[:K]
    width = Fraction(1, 2 ** (prec - 8))
    intervals = tuple(_refine_zero(counter, lo, hi, width) for lo, hi in brackets)
    return ZeroTable(nub, intervals, prec)


def _refine_zero(counter: _ZeroCounter, lo: Fraction, hi: Fraction, width: Fraction) -> RootInterval:
    """Newton from the bracket midpoint, then certify by signs; bisection as fallback."""
    slo = counter.F(lo).sign()
    shi = counter.F(hi).sign()
    if slo not in (1, -1) or shi not in (1, -1) or slo == shi:
        raise BracketFailure("no certified sign change on the bracket")
    tol = width * max(1, abs(lo)) / 4
    x = (lo + hi) / 2
    for _ in range(40):
        fx = counter.F(x)
        dfx = counter.F(x, 1)  # d/dr C_nu(-r) = -C_{nu+1}(-r)
        if dfx.sign() not in (1, -1):
            break
        step = B._to_fraction(fx.mid) / B._to_fraction(dfx.mid)
        nx = _round_dyadic(x + step, counter.prec + 24)
        if not lo < nx < hi:
            break
        x = nx
        if abs(step) < tol / 4:
            a, b = x - tol, x + tol
            if lo < a and b < hi and counter.F(a).sign() == slo and counter.F(b).sign() == shi:
                return RootInterval(a, b)
            break
    for _ in range(4 * counter.prec + 64):
        if hi - lo <= 4 * tol:
            return RootInterval(lo, hi)
        m = _round_dyadic((lo + hi) / 2, counter.prec + 24)
        sm = counter.F(m).sign()
        if sm == slo:
            lo = m
        elif sm == shi:
            hi = m
        else:
            raise PrecisionExhausted("sign undetermined near a zero")
    raise PrecisionExhausted("zero refinement stalled")


def _round_dyadic(q: Fraction, bits: int) -> Fraction:
    if q == 0:
        return q
    e = q.numerator.bit_length() - q.denominator.bit_length()
    scale = bits - e
    if scale >= 0:
        return Fraction(round(q * (1 << scale)), 1 << scale)
    return Fraction(round(q / (1 << -scale)) << -scale)


# -- R_alpha and partitions ------------------------------------------------------


def r_alpha(alpha: Number, n: int, prec: int | None = None) -> Ball:
    """First term 2 pi (pi a/12)^(a/2+1) C_{a/2+1}(pi^2 a/6 (n - a/24))."""
    prec = prec or DEFAULT_PREC
    w = prec + 32
    a = _b(alpha, w)
    if not a.certainly_gt(0):
        raise DomainError("alpha must be positive")
    shift = n - a / 24
    if shift.sign() == -1 or (shift.sign() is None):
        raise DomainError("n must be at least alpha/24")
    if shift.sign() is None:
        raise DomainError("cannot decide n >= alpha/24")
    pi = B.pi(w)
    nu = a / 2 + 1
    arg = pi * pi * a / 6 * shift
    if shift.sign() == 0:
        arg = B.zero(w)
    base = pi * a / 12
    power = B.exp(nu * B.log(base))
    q = _exact_value(alpha)
    if q is not None and (q / 2 + 1).denominator == 1:
        power = base ** int(q / 2 + 1)
    val = 2 * pi * power * bessel_clifford(nu, arg, w)
    return val.with_prec(prec)


@dataclass(frozen=True)
class PartitionTable:
    kind: str
    alpha: Fraction
    values: tuple[Fraction | int, ...]

    def __getitem__(self, n: int):
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=8)
def _partitions(N: int) -> tuple[int, ...]:
    p = [0] * (N + 1)
    p[0] = 1
    for n in range(1, N + 1):
        s = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            s += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                s += sign * p[n - g2]
            k += 1
        p[n] = s
    return tuple(p)


def partition_numbers(N: int) -> PartitionTable:
    """p(0..N) by the pentagonal-number recurrence."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return PartitionTable("Ordinary", Fraction(1), _partitions(N))


def _divisor_sums(N: int) -> list[int]:
    sigma = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            sigma[m] += d
    return sigma


def fractional_partition(alpha: Number, N: int) -> PartitionTable:
    """Coefficients of prod (1 - x^k)^(-alpha) via n p(n) = alpha sum sigma(k) p(n-k)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = Fraction(alpha) if not isinstance(alpha, str) else Fraction(alpha)
    sigma = _divisor_sums(N)
    p = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        s = sum(sigma[k] * p[n - k] for k in range(1, n + 1))
        p[n] = a * s / n
    return PartitionTable("Fractional", a, tuple(p))
