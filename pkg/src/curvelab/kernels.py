"""Select the compiled kernels when available, else the NumPy fallback.

Set ``CURVELAB_PURE=1`` to force the fallback (used by the benchmark and the
equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("CURVELAB_PURE", "").strip() not in ("", "0"):
    from ._kernels_py import curvature_sums, hermite_tail

    BACKEND = "python"
else:
    try:
        from ._kernels import curvature_sums, hermite_tail

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import curvature_sums, hermite_tail

        BACKEND = "python"

__all__ = ["BACKEND", "curvature_sums", "hermite_tail"]
