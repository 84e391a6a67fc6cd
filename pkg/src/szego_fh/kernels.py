"""Kernel backend selection.

The compiled Cython extension is preferred when importable; a pure-NumPy
fallback with identical semantics is used otherwise.  Set
``SZEGO_FH_BACKEND=pure`` (or ``compiled``) to force a choice; forcing
``compiled`` raises if the extension is missing.

For very large Hankel products the direct O(n^2) compiled loop loses to the
FFT form of the fallback, so :func:`hankel_matvec` delegates above a size
threshold regardless of backend.  Selection depends only on input sizes, so
results stay deterministic for a fixed problem.
"""

from __future__ import annotations

import os

from . import _kernels_py

_requested = os.environ.get("SZEGO_FH_BACKEND", "auto").lower()

if _requested == "pure":
    _impl = _kernels_py
elif _requested in ("auto", "compiled"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "SZEGO_FH_BACKEND=compiled but the szego_fh._kernels extension "
                "is not built; install with the Cython toolchain or use "
                "SZEGO_FH_BACKEND=pure"
            )
        _impl = _kernels_py
else:
    raise ValueError(
        f"SZEGO_FH_BACKEND must be auto, compiled or pure (got {_requested!r})"
    )

BACKEND = _impl.BACKEND

# Above this vector length the O(n log n) FFT product wins on any hardware
# we care about; keep the compiled loop for the small/medium sizes where it
# is fastest and allocation-free.
_DIRECT_HANKEL_MAX = 4096

levinson = _impl.levinson


def hankel_matvec(h, w):
    if len(w) > _DIRECT_HANKEL_MAX:
        return _kernels_py.hankel_matvec(h, w)
    return _impl.hankel_matvec(h, w)
