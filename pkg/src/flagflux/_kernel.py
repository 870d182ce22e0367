"""Kernel selection: compiled extension when present, pure Python otherwise.

Set FLAGFLUX_PURE=1 to force the pure backend (used by the benchmark and
the backend-parity tests).
"""

import os

if os.environ.get("FLAGFLUX_PURE") == "1":
    from . import _pyforms as _impl
else:
    try:
        from . import _fastforms as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pyforms as _impl

BACKEND = _impl.BACKEND
merge_indices = _impl.merge_indices
add_terms = _impl.add_terms
scale_terms = _impl.scale_terms
wedge_terms = _impl.wedge_terms
interior_terms = _impl.interior_terms
ce_terms = _impl.ce_terms
