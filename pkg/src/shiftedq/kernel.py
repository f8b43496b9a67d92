"""Kernel backend selection: compiled extension if available, else pure Python.

Set SHIFTEDQ_PURE=1 to force the pure-Python kernels (used by the benchmark
and to test both paths).
"""

import os

if os.environ.get("SHIFTEDQ_PURE") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_neg = _impl.poly_neg
poly_mul = _impl.poly_mul
poly_scale = _impl.poly_scale
exps_combine = _impl.exps_combine
