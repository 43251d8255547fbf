import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltalp import _kernels_py as py
from deltalp import kernels

cy = pytest.importorskip("deltalp._kernels")

ints = st.integers(-10**12, 10**12)


@st.composite
def boxes(draw, min_len=1, max_len=9):
    n = draw(st.integers(min_len, max_len))
    M = draw(st.lists(ints, min_size=n, max_size=n))
    if M[-1] == 0:
        M[-1] = 1
    R = draw(st.lists(st.integers(0, 10**6), min_size=n, max_size=n))
    return M, R


def _twins(name, *args):
    a = getattr(py, name)(*[list(x) if isinstance(x, list) else x for x in args])
    b = getattr(cy, name)(*[list(x) if isinstance(x, list) else x for x in args])
    return a, b


@given(boxes(), st.integers(-50, 50))
def test_taylor_shift_twins(box, c):
    a, b = _twins("taylor_shift", *box, c)
    assert a == b


@given(boxes(), st.integers(1, 50), st.integers(1, 50))
def test_scale_and_split_twins(box, u, v):
    a, b = _twins("scale", *box, u, v)
    assert a == b
    a, b = _twins("split_right", *box, u, u + v)
    assert a == b


@given(boxes())
def test_bounds_and_normalize_twins(box):
    for name in ("variation_bounds", "descartes_bounds", "negate_var", "taylor_shift1", "normalize"):
        a, b = _twins(name, *box)
        assert a == b, name


@given(boxes(), st.integers(-100, 100), st.integers(1, 100))
def test_eval_sign_twins(box, num, den):
    a, b = _twins("eval_sign", *box, num, den)
    assert a == b


@given(boxes(min_len=2))
def test_isolate01_twins(box):
    a, b = _twins("isolate01", *box, 60, 2000, None)
    assert a == b


@pytest.mark.skipif(os.environ.get("DELTALP_PURE_PYTHON") == "1", reason="fallback forced")
def test_backend_selected_at_import():
    assert kernels.BACKEND == "cython"


def test_pure_python_fallback_by_environment():
    env = dict(os.environ, DELTALP_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from deltalp import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
