"""Finite Toeplitz sections of a symbol and their inverse first columns.

The matrix of order N is the (N+1) x (N+1) Hermitian Toeplitz section
``T[i, j] = fhat(i - j)`` generated by the coefficients ``fhat(0..N)``.
With this orientation the first column of the inverse carries the predictor
(Szego) polynomial coefficients and obeys the closed-form asymptotics
implemented in :mod:`szego_fh.asymptotics`; the transposed convention that
sometimes appears in print is its entrywise conjugate and agrees with it for
every real-coefficient (conjugate-symmetric) symbol.

The production solver is the O(N^2) Levinson-Durbin recursion; a dense
pivoted-factorization oracle is kept for cross-checks at small orders.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from . import kernels
from .symbols import FHSymbol, fhat_range

__all__ = [
    "NotPositiveDefiniteError",
    "ToeplitzSystem",
    "PredictorPolynomial",
    "build_system",
    "default_series_length",
    "levinson_first_column",
    "dense_inverse_oracle",
    "last_column_from_first",
    "last_column_predictor",
    "szego_polynomial",
    "szego_zero_moduli",
    "export_first_column_csv",
]

_DENSE_MAX_ORDER = 512
_ILL_CONDITIONED = 1.0 - 1e-12


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    """The Toeplitz section is not positive definite."""


def default_series_length(order: int) -> int:
    # Keeps the fhat truncation error below Levinson round-off for
    # leading exponents up to ~0.45.
    return max(4096, 32 * order)


@dataclass(frozen=True)
class ToeplitzSystem:
    """Order-N Toeplitz section of a symbol.

    ``first_row`` holds the generating coefficients fhat(0..N); by Hermitian
    symmetry they determine the whole section (see the module docstring for
    the entry orientation).
    """

    order: int
    first_row: np.ndarray
    symbol: FHSymbol
    series_len: int

    def __post_init__(self):
        row = np.ascontiguousarray(self.first_row, dtype=np.complex128)
        if len(row) != self.order + 1:
            raise ValueError("first_row must hold fhat(0..N)")
        if row[0].imag != 0.0:
            raise ValueError("fhat(0) must be real")
        row.setflags(write=False)
        object.__setattr__(self, "first_row", row)

    def dense_matrix(self) -> np.ndarray:
        """Materialize the full section (guarded to orders <= 512)."""
        if self.order > _DENSE_MAX_ORDER:
            raise ValueError(
                f"dense path is guarded to N <= {_DENSE_MAX_ORDER} (got {self.order})"
            )
        return scipy.linalg.toeplitz(c=self.first_row, r=np.conj(self.first_row))


def build_system(symbol: FHSymbol, order: int, L: int | None = None) -> ToeplitzSystem:
    """Fill fhat(0..N) from the symbol's series at truncation length L."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if L is None:
        L = default_series_length(order)
    if L < 2 * order:
        raise ValueError(f"need L >= 2N (got L={L}, N={order})")
    row = fhat_range(symbol, order, L)
    return ToeplitzSystem(order, row, symbol, L)


@dataclass(frozen=True)
class PredictorPolynomial:
    """First column of the inverse section and its normalized views.

    ``first_column[k] = (T^-1)[k, 0]``; the normalized coefficients
    ``phi_star`` form the degree-N predictor polynomial (constant term 1) and
    ``prediction_error`` equals ``1/first_column[0]``.
    """

    degree: int
    first_column: np.ndarray
    reflections: np.ndarray
    prediction_errors: np.ndarray

    def __post_init__(self):
        col = np.ascontiguousarray(self.first_column, dtype=np.complex128)
        col.setflags(write=False)
        object.__setattr__(self, "first_column", col)
        refl = np.ascontiguousarray(self.reflections, dtype=np.complex128)
        refl.setflags(write=False)
        object.__setattr__(self, "reflections", refl)
        errs = np.ascontiguousarray(self.prediction_errors, dtype=np.float64)
        errs.setflags(write=False)
        object.__setattr__(self, "prediction_errors", errs)
        if not col[0].real > 0 or col[0].imag != 0.0:
            raise NotPositiveDefiniteError("(T^-1)[0,0] must be real positive")

    @cached_property
    def phi_star(self) -> np.ndarray:
        out = self.first_column / self.first_column[0]
        out.setflags(write=False)
        return out

    @property
    def prediction_error(self) -> float:
        return float(self.prediction_errors[-1])


def levinson_first_column(system: ToeplitzSystem) -> PredictorPolynomial:
    """First inverse column by the Hermitian Levinson-Durbin recursion.

    O(N^2) time, O(N) memory; the matrix is never materialized.  Raises
    :class:`NotPositiveDefiniteError` when a prediction-error variance fails
    to stay positive and warns when a reflection coefficient comes within
    1e-12 of the unit circle.
    """
    try:
        a, rho, err = kernels.levinson(system.first_row)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(str(exc)) from exc
    if len(rho) and np.max(np.abs(rho)) > _ILL_CONDITIONED:
        warnings.warn(
            "ill-conditioned Toeplitz section: a reflection coefficient is "
            "within 1e-12 of the unit circle",
            stacklevel=2,
        )
    # T a = err[-1] * e0, a[0] = 1  =>  first column is a / err[-1].
    column = a / err[-1]
    column[0] = column[0].real
    return PredictorPolynomial(system.order, column, rho, err)


def dense_inverse_oracle(system: ToeplitzSystem) -> np.ndarray:
    """Full inverse by pivoted dense factorization (tests and cross-checks only)."""
    matrix = system.dense_matrix()
    return scipy.linalg.inv(matrix)


def last_column_from_first(pred: PredictorPolynomial) -> np.ndarray:
    """Last inverse column via persymmetry: (T^-1)[N-k, N] = conj((T^-1)[k, 0])."""
    return np.conj(pred.first_column)[::-1]


def last_column_predictor(system: ToeplitzSystem) -> np.ndarray:
    """Predictor coefficients read off the last inverse column.

    Solves T x = e_N densely and returns ``x[k] / x[N]``; by persymmetry this
    equals ``conj(phi_star)`` reversed, which the consistency tests assert
    against the Levinson path.
    """
    matrix = system.dense_matrix()
    rhs = np.zeros(system.order + 1, dtype=np.complex128)
    rhs[-1] = 1.0
    x = scipy.linalg.solve(matrix, rhs, assume_a="her")
    return x / x[-1]


def szego_polynomial(pred: PredictorPolynomial) -> np.ndarray:
    """Monic degree-N orthogonal polynomial: coefficient k is conj(phi_star[N-k])."""
    return np.conj(pred.phi_star)[::-1]


def szego_zero_moduli(pred: PredictorPolynomial) -> np.ndarray:
    """Moduli of the zeros of the monic polynomial (companion-matrix roots).

    Guarded to small degrees; all moduli lie strictly inside the unit disk
    for a positive definite section.
    """
    if pred.degree > 64:
        raise ValueError("zero location check is guarded to N <= 64")
    coeffs = szego_polynomial(pred)
    roots = np.polynomial.polynomial.polyroots(coeffs)
    return np.abs(roots)


def export_first_column_csv(pred: PredictorPolynomial, path) -> None:
    """Write the first column as CSV rows ``k, re, im`` (17 significant digits)."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("k,re,im\n")
        for k, value in enumerate(pred.first_column):
            fh.write(f"{k},{value.real:.17g},{value.imag:.17g}\n")
