"""Pure-NumPy implementations of the hot kernels.

Selected at import time by :mod:`szego_fh.kernels` when the compiled
extension is unavailable (or explicitly disabled).  Semantics match the
compiled versions; only rounding of the summation strategies differs at
machine-epsilon level.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

BACKEND = "pure"

# Below this size the direct O(n^2) Hankel product beats FFT setup cost.
_HANKEL_FFT_MIN = 192


def levinson(t: np.ndarray):
    """Hermitian Levinson-Durbin recursion for T x = e_0, T[i, j] = t[i-j].

    Returns ``(a, rho, err)`` where ``a`` is the monic solution of
    ``T a = err[-1] * e_0`` (so the first inverse column is ``a / err[-1]``),
    ``rho`` holds the reflection coefficients and ``err`` the prediction-error
    variances for orders 0..N.  Raises ``np.linalg.LinAlgError`` as soon as a
    prediction-error variance fails to stay positive.
    """
    t = np.ascontiguousarray(t, dtype=np.complex128)
    n_max = len(t) - 1
    if n_max < 0:
        raise ValueError("need at least one coefficient")
    a = np.zeros(n_max + 1, dtype=np.complex128)
    a[0] = 1.0
    rho = np.zeros(n_max, dtype=np.complex128)
    err = np.zeros(n_max + 1, dtype=np.float64)
    e = t[0].real
    if e <= 0.0:
        raise np.linalg.LinAlgError("leading minor of order 1 is not positive definite")
    err[0] = e
    for n in range(1, n_max + 1):
        delta = np.dot(a[:n], t[n:0:-1])
        r = -delta / e
        if abs(r) >= 1.0:
            raise np.linalg.LinAlgError(
                f"leading minor of order {n + 1} is not positive definite"
            )
        rho[n - 1] = r
        update = r * np.conj(a[:n][::-1])
        a[1 : n + 1] += update
        e *= 1.0 - abs(r) ** 2
        if e <= 0.0:
            raise np.linalg.LinAlgError(
                f"leading minor of order {n + 1} is not positive definite"
            )
        err[n] = e
    return a, rho, err


def hankel_matvec(h: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Hankel-kernel product ``out[i] = sum_j h[i + j] * w[j]``.

    ``h`` must hold at least ``2*len(w) - 1`` entries.  Large products use an
    FFT correlation; the result is identical to direct summation up to
    rounding.
    """
    w = np.asarray(w)
    h = np.asarray(h)
    n = len(w)
    if n == 0:
        return w[:0].copy()
    if len(h) < 2 * n - 1:
        raise ValueError("kernel array too short for the requested product")
    h = h[: 2 * n - 1]
    if n < _HANKEL_FFT_MIN:
        out = np.empty(n, dtype=np.result_type(h, w, np.float64))
        for i in range(n):
            out[i] = np.dot(h[i : i + n], w)
        return out
    return np.ascontiguousarray(fftconvolve(h, w[::-1])[n - 1 : 2 * n - 1])
