"""Pick the compiled F_p kernel when it was built, else the Python one.

Set ``ROOTLIE_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ROOTLIE_PURE_PYTHON"):
    from rootlie._fp_py import rank, rref

    BACKEND = "python"
else:
    try:
        from rootlie._fp import rank, rref

        BACKEND = "cython"
    except ImportError:  # extension not built
        from rootlie._fp_py import rank, rref

        BACKEND = "python"

__all__ = ["BACKEND", "rank", "rref"]
