"""Vectorized numerical kernels with a compiled fast path.

The compiled Cython backend (``sqzfilter._kernels._core``) is preferred when
it was built; otherwise the pure-numpy backend is used.  Both implement the
same five functions with identical arithmetic ordering, so results agree to
rounding.  Set the environment variable ``SQZFILTER_KERNELS`` to ``cython``
or ``numpy`` before import to force a backend (forcing ``cython`` when the
extension is missing raises ImportError rather than silently degrading).
"""

from __future__ import annotations

import os

_requested = os.environ.get("SQZFILTER_KERNELS", "").strip().lower()
if _requested not in ("", "cython", "numpy"):
    raise ImportError(
        f"SQZFILTER_KERNELS must be 'cython' or 'numpy', got {_requested!r}"
    )

_impl = None
backend = ""

if _requested in ("", "cython"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        backend = "cython"
    except ImportError:
        if _requested == "cython":
            raise

if _impl is None:
    from . import _numpy as _impl  # type: ignore[no-redef]

    backend = "numpy"

lineshape_eval = _impl.lineshape_eval
lineshape_jacobian = _impl.lineshape_jacobian
propagate_arrays = _impl.propagate_arrays
homodyne_surface = _impl.homodyne_surface
minmax_arrays = _impl.minmax_arrays


def get_backend() -> str:
    """Name of the active kernel backend: 'cython' or 'numpy'."""
    return backend


__all__ = [
    "backend",
    "get_backend",
    "lineshape_eval",
    "lineshape_jacobian",
    "propagate_arrays",
    "homodyne_surface",
    "minmax_arrays",
]
