"""Select the elimination backend at import.

The compiled extension is used when it was built; setting
``PHG_PURE_PYTHON=1`` forces the pure-Python twin.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("PHG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

echelon = _impl.echelon
det = _impl.det
