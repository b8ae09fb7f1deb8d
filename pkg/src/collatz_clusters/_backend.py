"""Kernel backend selection.

Imports the compiled Cython kernels when the extension was built, otherwise
the pure-Python fallback.  Set COLLATZ_PURE=1 to force the fallback (used by
the benchmark and by tests that cross-check the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("COLLATZ_PURE") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND: str = kernels.BACKEND
