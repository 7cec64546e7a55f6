"""Selects the arithmetic kernel backend at import time.

The compiled Cython extension is preferred when importable; otherwise the
pure-Python kernels are used.  QMGW_PURE=1 forces the pure backend (useful
for the benchmark and for debugging).
"""

import os

if os.environ.get("QMGW_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

conv_trunc = _impl.conv_trunc
exp_mul_dict = _impl.exp_mul_dict
exp_mul_dict_capped = _impl.exp_mul_dict_capped
