"""Kernel backend selection.

The compiled Cython extension is preferred when it imported cleanly; the
pure-NumPy module is the fallback.  Set ``PULSEDROP_PURE=1`` to force the
fallback (useful for benchmarking and for testing both paths).
"""

from __future__ import annotations

import os

if os.environ.get("PULSEDROP_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

halfint = _impl.halfint
pwconst_halfint = _impl.pwconst_halfint
second_kind_march = _impl.second_kind_march
fdtd_run = _impl.fdtd_run


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "numpy"."""
    return _impl.BACKEND
