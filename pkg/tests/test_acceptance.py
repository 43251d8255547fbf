"""The nine acceptance criteria, each at its stated tolerance and time budget.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary).  Run directly with ``python3 tests/test_acceptance.py``.
"""

import functools
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from deltalp import ball as B  # noqa: E402
from deltalp import harness as H  # noqa: E402
from deltalp.constructions import SequenceWindow, jensen_poly  # noqa: E402
from deltalp.curves import (  # noqa: E402
    check_interlacing,
    check_limits,
    default_grid,
    laguerre_scaled_roots,
    trace_root_curves,
)
from deltalp.poly import IntervalPolynomial, RootSign, Status, Verdict, certify_hyperbolic, isolate_real_roots  # noqa: E402
from deltalp.specfun import partition_numbers, r_alpha  # noqa: E402
from oracles import sturm_count  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []


def criterion(number: int, title: str, budget: float):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            error = None
            try:
                detail = fn() or ""
            except AssertionError as exc:
                error, detail = exc, str(exc).splitlines()[0] if str(exc) else "assertion failed"
            elapsed = time.perf_counter() - t0
            if error is None and elapsed > budget:
                error = AssertionError(f"took {elapsed:.1f} s, budget {budget:.0f} s")
                detail = str(error)
            status = "PASS" if error is None else "FAIL"
            line = f"criterion {number}: {status}  {title}  [{elapsed:.1f} s / {budget:.0f} s]  {detail}"
            print(line)
            ACCEPTANCE_LINES.append(line)
            if error is not None:
                raise error

        return run

    return wrap


def _clean(report):
    s = report.summary
    assert s["failed"] == 0, f"{report.suite_id}: failures {[c.key for c in report.failures][:5]}"
    assert s["undetermined"] == 0, f"{report.suite_id}: {s['undetermined']} undetermined"
    return s


@criterion(1, "partition Jensen boundary n=24 / 25..200", 10)
def test_criterion_1_partition_boundary():
    p = partition_numbers(202)
    bad = []
    for n in range(25, 201):
        J = jensen_poly(SequenceWindow.from_sequence(p.values, n, 2))
        if certify_hyperbolic(J, RootSign.ALL_NEGATIVE).verdict is not Verdict.HYPERBOLIC:
            bad.append(n)
    assert not bad, f"not certified hyperbolic at n = {bad[:5]}"
    J24 = jensen_poly(SequenceWindow.from_sequence(p.values, 24, 2))
    assert certify_hyperbolic(J24).verdict is Verdict.NOT_HYPERBOLIC, "n = 24 not rejected"
    return "176 hyperbolic, n=24 NotHyperbolic"


@criterion(2, "Ono grid alpha in {1/4,1/2,1,5/4,149/100}, n<=50, d<=12", 300)
def test_criterion_2_ono_grid():
    alphas = [F(1, 4), F(1, 2), F(1), F(5, 4), F(149, 100)]
    rep = H.suite_ono_grid(alphas, n_max=50, d_max=12, prec=128, max_prec=1024)
    s = _clean(rep)
    jensen = [c for c in rep.cases if c.key.endswith("/jensen")]
    assert len(jensen) == 5 * 50 * 13 and all(c.verdict == H.PASS for c in jensen)
    return f"{s['passed']} of {s['run']} cases certified (Jensen and direct routes)"


@criterion(3, "Bessel-Clifford zero gaps > pi^2/4, nu=1/2 closed form 1e-20", 30)
def test_criterion_3_zero_separation():
    rep = H.suite_zeros([F(1, 2), F(3, 2), F(5, 2)], 20, prec=128)
    s = _clean(rep)
    assert s["run"] == 3 * 19 + 20
    return f"{s['passed']} checks"


@criterion(4, "delta-difference fuzz, 1000 trials + exact-gap edges", 120)
def test_criterion_4_delta_difference():
    total = 0
    for delta, trials, seed in ((F(1, 10), 334, 1), (F(1, 2), 333, 2), (F(1), 333, 3)):
        rep = H.suite_delta_difference(trials, 10, delta, seed)
        total += _clean(rep)["run"]
    return f"{total} cases, 0 failures"


@criterion(5, "Laguerre curve family: interlacing and limits at |x| = 10/delta", 60)
def test_criterion_5_curve_family():
    delta = B.pi() ** 2 / 6
    roots = laguerre_scaled_roots(5, F(3, 2), 5)
    grid = default_grid(delta)
    fams = {d: trace_root_curves(roots, delta, d, grid) for d in (0, 1, 2)}
    checked = 0
    for d in (1, 2):
        rep = check_interlacing(fams[d], fams[d - 1])
        assert not rep.violations, f"interlacing violations at d={d}: {rep.violations[:3]}"
        assert not rep.undecided, f"undecided interlacing at d={d}"
        checked += rep.checked
    x_far = max(grid)
    assert abs(x_far * delta - 10).abs_upper() < 1e-6
    worst = 0.0
    for d in (1, 2):
        lim = check_limits(fams[d], x_far, F(1, 1000))
        assert lim.ok, f"limit off by more than 1e-3 at d={d}"
        worst = max(worst, max(float(abs(e["t"] - e["target"]).abs_upper()) for e in lim.entries))
    return f"{checked} interlacing checks, worst limit error {worst:.1e}"


@criterion(6, "Gaussian g_d, d<=15, gaps >= 2 beta for beta in {0.1,0.5,1}", 60)
def test_criterion_6_gaussian():
    done = 0
    for beta in (F(1, 10), F(1, 2), F(1)):
        rep = H.suite_gaussian(beta, 15)
        _clean(rep)
        seps = [c for c in rep.cases if c.key.startswith("separation/")]
        assert len(seps) == 15 and all(c.verdict == H.PASS for c in seps)
        done += len(seps)
    return f"{done} degree/beta pairs certified"


@criterion(7, "Laguerre identity (d<=10) and delta-Laguerre hyperbolicity", 60)
def test_criterion_7_laguerre():
    deltas = [F(1, 4), F(1, 2), F(3, 4), F(1)]
    ident = 0
    for nu in (F(0), F(1, 2), F(3, 2)):
        rep = H.suite_laguerre_delta(nu, deltas, 10)
        _clean(rep)
        ids = [c for c in rep.cases if c.key.startswith("identity/")]
        assert len(ids) == 11 and all(c.verdict == H.PASS for c in ids)
        ident += len(ids)
    return f"{ident} identities, all delta-Laguerre Jensen polynomials hyperbolic"


@criterion(8, "first-term trend |R_1(n)/p(n) - 1| decreasing on n = 10,20,50,100", 10)
def test_criterion_8_trend():
    p = partition_numbers(100)
    errs = [abs(r_alpha(1, n, 128) / p[n] - 1) for n in (10, 20, 50, 100)]
    for a, b in zip(errs, errs[1:]):
        assert b.certainly_lt(a), "trend not strictly decreasing"
    return "errors " + ", ".join(f"{float(e):.2e}" for e in errs)


def _random_rational_poly(rng: random.Random) -> list[F]:
    kind = rng.randrange(3)
    deg = rng.randint(1, 8)
    if kind == 0:
        c = [F(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(deg + 1)]
        if c[-1] == 0:
            c[-1] = F(1)
        return c
    from deltalp import exact as Q

    p = [F(rng.choice((-3, -1, 1, 2, 5)), rng.randint(1, 4))]
    while len(p) - 1 < deg:
        if kind == 2 and len(p) - 1 <= deg - 2 and rng.random() < 0.4:
            a, b = F(rng.randint(-5, 5), rng.randint(1, 3)), F(rng.randint(1, 9), rng.randint(1, 3))
            p = Q.mul(p, [a * a + b, -2 * a, F(1)])  # no real roots
        else:
            r = F(rng.randint(-20, 20), rng.randint(1, 6))
            for _ in range(min(rng.choice((1, 1, 2, 3)), deg - len(p) + 1)):
                p = Q.mul(p, [-r, F(1)])
    return p


@criterion(9, "root counts agree with Sturm on 500 random rational polynomials", 30)
def test_criterion_9_sturm_oracle():
    rng = random.Random(20240901)
    mismatches = []
    for i in range(500):
        c = _random_rational_poly(rng)
        iso = isolate_real_roots(IntervalPolynomial(c))
        if iso.status is not Status.COMPLETE or iso.certified_count != sturm_count(c):
            mismatches.append(i)
    assert not mismatches, f"{len(mismatches)} disagreements, first at case {mismatches[0]}"
    return "500/500 agree"


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
