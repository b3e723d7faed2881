"""Kernel selection.

The compiled extension ``arthur_phi._kernels`` is used when it imports;
otherwise the pure-Python twin in ``_kernels_py`` takes over.  Setting
``ARTHUR_PHI_PURE=1`` forces the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ARTHUR_PHI_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"

weyl_closure = _impl.weyl_closure
sign_rows = _impl.sign_rows
conformal_indices = _impl.conformal_indices

__all__ = ["BACKEND", "weyl_closure", "sign_rows", "conformal_indices"]
