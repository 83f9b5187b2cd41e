"""Kernel backend selection.

Importing this module picks the compiled Jacobi extension when present and
falls back to the pure-python implementation otherwise.  Set GAPSCOPE_PURE=1
to force the fallback (used by the benchmark and the backend-parity tests).
"""

import os

BACKEND = "pure"

if os.environ.get("GAPSCOPE_PURE", "") in ("", "0"):
    try:
        from . import _jacobi as _impl
        BACKEND = "compiled"
    except ImportError:
        from . import _jacobi_py as _impl
else:
    from . import _jacobi_py as _impl

jacobi_sweeps = _impl.jacobi_sweeps
