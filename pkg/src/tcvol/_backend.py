"""Pick the compiled kernels when available, else the NumPy fallback.

Set ``TCVOL_BACKEND=python`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("TCVOL_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

preaverage_bins = kernels.preaverage_bins
local_cf = kernels.local_cf
