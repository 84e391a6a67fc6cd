"""Truncated Laurent series on the unit circle.

A :class:`LaurentSeries` stores Fourier coefficients on a contiguous index
window ``min_index..max_index`` together with a claimed power-law tail decay
exponent.  All arithmetic keeps a fixed, input-determined summation order so
results are bitwise reproducible for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

__all__ = ["LaurentSeries", "convolve_coeffs"]

# Below this total length plain convolution is cheaper than FFT planning.
_FFT_THRESHOLD = 4096


def convolve_coeffs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full linear convolution of coefficient arrays (FFT for long inputs)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if len(a) + len(b) <= _FFT_THRESHOLD:
        return np.convolve(a, b)
    return np.ascontiguousarray(fftconvolve(a, b))


@dataclass(frozen=True)
class LaurentSeries:
    """Coefficients ``coeffs[i]`` at index ``min_index + i``.

    A series is "analytic" when ``min_index == 0``; ``tail_exponent`` is the
    claimed decay ``|c(u)| = O(|u|**tail_exponent)`` beyond the stored window
    (``-inf`` marks geometric or faster decay).
    """

    min_index: int
    max_index: int
    coeffs: np.ndarray
    tail_exponent: float = -math.inf

    def __post_init__(self):
        arr = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.max_index - self.min_index + 1 != len(arr):
            raise ValueError(
                f"index window [{self.min_index}, {self.max_index}] does not "
                f"match {len(arr)} stored coefficients"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def analytic(cls, coeffs, tail_exponent: float = -math.inf) -> "LaurentSeries":
        coeffs = np.asarray(coeffs)
        return cls(0, len(coeffs) - 1, coeffs, tail_exponent)

    @property
    def is_analytic(self) -> bool:
        return self.min_index == 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficient(self, u: int) -> complex:
        """Coefficient at absolute index ``u`` (zero outside the window)."""
        if self.min_index <= u <= self.max_index:
            return complex(self.coeffs[u - self.min_index])
        return 0.0 + 0.0j

    def window(self, lo: int, hi: int) -> "LaurentSeries":
        """Restrict (and zero-pad) to the index window ``lo..hi``."""
        if hi < lo:
            raise ValueError("empty window")
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        src_lo = max(lo, self.min_index)
        src_hi = min(hi, self.max_index)
        if src_lo <= src_hi:
            out[src_lo - lo : src_hi - lo + 1] = self.coeffs[
                src_lo - self.min_index : src_hi - self.min_index + 1
            ]
        return LaurentSeries(lo, hi, out, self.tail_exponent)

    def shifted(self, n: int) -> "LaurentSeries":
        """Multiply by ``chi**n`` (pure index shift)."""
        return LaurentSeries(
            self.min_index + n, self.max_index + n, self.coeffs, self.tail_exponent
        )

    def conjugate_reflect(self) -> "LaurentSeries":
        """Series of the complex conjugate function: ``c'(u) = conj(c(-u))``."""
        return LaurentSeries(
            -self.max_index,
            -self.min_index,
            np.conj(self.coeffs[::-1]),
            self.tail_exponent,
        )

    def multiply(self, other: "LaurentSeries") -> "LaurentSeries":
        """Truncated product; the result window is the full convolution span."""
        out = convolve_coeffs(self.coeffs, other.coeffs)
        return LaurentSeries(
            self.min_index + other.min_index,
            self.max_index + other.max_index,
            out,
            max(self.tail_exponent, other.tail_exponent),
        )

    def add(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = min(self.min_index, other.min_index)
        hi = max(self.max_index, other.max_index)
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        out[self.min_index - lo : self.max_index - lo + 1] += self.coeffs
        out[other.min_index - lo : other.max_index - lo + 1] += other.coeffs
        return LaurentSeries(lo, hi, out, max(self.tail_exponent, other.tail_exponent))

    def inner(self, other: "LaurentSeries") -> complex:
        """L2 pairing ``<self | other> = sum_u c(u) * conj(d(u))``."""
        lo = max(self.min_index, other.min_index)
        hi = min(self.max_index, other.max_index)
        if hi < lo:
            return 0.0 + 0.0j
        a = self.coeffs[lo - self.min_index : hi - self.min_index + 1]
        b = other.coeffs[lo - other.min_index : hi - other.min_index + 1]
        return complex(np.dot(a, np.conj(b)))

    def norm2(self) -> float:
        """Squared L2 norm of the stored window."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def energy(self) -> float:
        return self.norm2()
