"""Select the compiled Descartes kernels when available, else the Python ones.

Set ``DELTALP_PURE_PYTHON=1`` to force the fallback.
"""

import os

_impl = None
if os.environ.get("DELTALP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None
if _impl is None:
    from . import _kernels_py as _impl

BACKEND = "cython" if _impl.__name__.endswith("._kernels") else "python"

taylor_shift = _impl.taylor_shift
taylor_shift1 = _impl.taylor_shift1
scale = _impl.scale
negate_var = _impl.negate_var
variation_bounds = _impl.variation_bounds
descartes_bounds = _impl.descartes_bounds
eval_sign = _impl.eval_sign
split_right = _impl.split_right
normalize = _impl.normalize
isolate01 = _impl.isolate01
