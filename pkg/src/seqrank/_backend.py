"""Kernel backend selection.

The compiled Cython extension is used when it imports; otherwise the
pure-Python twin takes over.  Set ``SEQRANK_KERNELS=py`` to force the
fallback (useful for debugging and for the backend benchmark), or
``SEQRANK_KERNELS=c`` to fail loudly when the extension is missing.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("SEQRANK_KERNELS", "auto").lower()

if _choice == "py":
    kernels = _kernels_py
elif _choice == "c":
    from . import _kernels as kernels  # noqa: F401
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
