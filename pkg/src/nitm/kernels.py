"""Integration kernel selection.

Imports the compiled kernel when the extension built, otherwise the
pure-Python twin. Setting NITM_PURE=1 in the environment forces the
fallback (used by the benchmark and the backend-equality tests).
"""

import os

from . import _kernels_py

BLOWUP_LIMIT = _kernels_py.BLOWUP_LIMIT

if os.environ.get("NITM_PURE", "") not in ("", "0"):
    BACKEND = "pure"
    fill_blasius_family = _kernels_py.fill_blasius_family
else:
    try:
        from . import _kernels

        BACKEND = "compiled"
        fill_blasius_family = _kernels.fill_blasius_family
    except ImportError:
        BACKEND = "pure"
        fill_blasius_family = _kernels_py.fill_blasius_family
