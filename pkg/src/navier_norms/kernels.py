"""Backend selection for the hot numerical kernels.

At import time the compiled Cython extension is preferred; the pure-numpy
fallback is used when the extension is absent or when the environment
variable NAVIER_NORMS_KERNELS is set to "python".  Both backends expose the
same functions and return identical results up to floating-point rounding.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("NAVIER_NORMS_KERNELS", "").lower() == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
picard_solve = _impl.picard_solve


def get_backend(name: str | None = None):
    """Return a kernel module by name ("python", "cython") or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels  # raises ImportError if not built

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
