"""Pick the compiled kernels when available, else the numpy fallback."""

import os

if os.environ.get("HOPFIELD_PURE_PYTHON", "") not in ("", "0"):
    from . import _fallback as kernels
    COMPILED = False
else:
    try:
        from . import _kernels as kernels
        COMPILED = True
    except ImportError:  # extension not built
        from . import _fallback as kernels
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"
