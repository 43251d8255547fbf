from fractions import Fraction as F

import pytest

from deltalp import ball as B
from deltalp.curves import (
    Domain,
    check_interlacing,
    check_limits,
    csv_text,
    default_grid,
    laguerre_scaled_roots,
    trace_root_curves,
)
from deltalp.errors import GridMismatch

ROOTS = [F(0), F(-2), F(-5)]
GRID = [F(-6), F(-2), F(-1, 4), F(1, 4), F(2), F(6)]


@pytest.fixture(scope="module")
def families():
    return {d: trace_root_curves(ROOTS, 1, d, GRID) for d in (0, 1, 2)}


def test_branch_labels_and_domains(families):
    fam = families[2]
    assert len(fam.branches) == 5
    assert fam.branch(1).domain is Domain.NEG and fam.branch(5).domain is Domain.POS
    assert fam.branch(3).domain is Domain.FULL
    assert [x for x, _ in fam.branch(1).samples] == GRID[:3]
    assert [x for x, _ in fam.branch(5).samples] == GRID[3:]


def test_degree_zero_is_constant(families):
    fam = families[0]
    for k, r in enumerate(ROOTS, 1):
        assert all(t.overlaps(r) for _, t in fam.branch(k).samples)


def test_samples_are_descending_and_delta_separated(families):
    fam = families[2]
    for x in GRID:
        ts = [fam.branch(k).at(x) for k in fam.labels_at(x)]
        for a, b in zip(ts, ts[1:]):
            assert (a - b - 1).sign() in (0, 1)


@pytest.mark.parametrize("d", [1, 2])
def test_interlacing(families, d):
    rep = check_interlacing(families[d], families[d - 1])
    assert rep.checked > 0 and rep.ok and not rep.undecided


def test_interlacing_rejects_mismatched_inputs(families):
    with pytest.raises(GridMismatch):
        check_interlacing(families[2], families[0])
    other = trace_root_curves(ROOTS, 1, 1, GRID[1:])
    with pytest.raises(GridMismatch):
        check_interlacing(families[2], other)


def test_limits(families):
    rep = check_limits(families[1], 30, F(1, 1000))
    assert rep.ok
    assert len(rep.entries) == 2 * len(ROOTS)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        trace_root_curves([F(0), F(-1, 2)], 1, 1, GRID)
    with pytest.raises(ValueError):
        trace_root_curves(ROOTS, 1, 1, [F(0), F(1)])
    with pytest.raises(ValueError):
        trace_root_curves(ROOTS, 1, -1, GRID)


def test_csv_is_deterministic(families):
    a = csv_text(families[1], 12)
    b = csv_text(trace_root_curves(ROOTS, 1, 1, GRID), 12)
    assert a == b
    assert a.splitlines()[0] == "x,branch_k,t,d"
    assert len(a.splitlines()) == 1 + len(ROOTS) * len(GRID)  # n roots at every x


def test_parallel_matches_serial():
    serial = trace_root_curves(ROOTS, 1, 1, GRID[:2] + GRID[-2:])
    parallel = trace_root_curves(ROOTS, 1, 1, GRID[:2] + GRID[-2:], jobs=2)
    assert csv_text(serial) == csv_text(parallel)


def test_default_grid_is_symmetric_and_excludes_zero():
    g = default_grid(B.pi() ** 2 / 6, points=10)
    assert len(g) == 20 and 0 not in g
    assert sorted(-x for x in g) == sorted(g)


def test_laguerre_scaled_roots():
    roots = laguerre_scaled_roots(2, 0, 2)
    # L_2(-t/2) = 1 + t + t^2/8: roots -4 +- 2 sqrt 2
    s = B.sqrt(B.ball(2)) * 2
    assert roots[0].overlaps(s - 4) and roots[1].overlaps(-s - 4)
