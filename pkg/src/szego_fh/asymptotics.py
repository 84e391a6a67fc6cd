"""Closed-form predictions for coefficient sequences and inverse entries.

Conventions (all verified against the exact series/solver paths at build
time; see the tests):

* ``beta_k`` (coefficients of 1/g) behave like ``k^(a1-1)/Gamma(a1)`` times a
  sum of rotating terms ``K_j * conj(chi_j)^k / c1(chi_j)`` over the leading
  singular factors.
* ``gamma_{-k}`` (negative phase coefficients) behave like ``1/k`` times
  ``(sin(pi*a_j)/pi) * H_j * (c1(chi_j)/conj(c1(chi_j))) * chi_j^k`` summed
  over all factors; note the un-conjugated rotation here.
* First inverse-column entries at interior depth x = k/N pick up the boundary
  factor ``(1 - k/N)^a1`` on top of the beta structure; exact columns are
  compared after dividing by ``beta_0`` once.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_function

from .symbols import FHSymbol, SymbolError, gegenbauer_symbol, origin_symbol

__all__ = [
    "AsymptoticPrediction",
    "LeadingConstants",
    "GegenbauerPrediction",
    "ComparisonRecord",
    "leading_constants",
    "beta_asymptotic",
    "gamma_asymptotic",
    "entry_asymptotic",
    "gegenbauer_phase",
    "gegenbauer_asymptotic",
    "small_k_entry",
    "predizero_special",
    "compare",
    "write_comparison_csv",
    "COMPARISON_CSV_HEADER",
]


@dataclass(frozen=True)
class AsymptoticPrediction:
    """A predicted value with its leading power and claimed error order.

    ``leading_exponent`` is the power of k (or of N for the N-indexed
    regimes) of the leading term; ``claimed_error_order`` the exponent of the
    relative remainder as stated by the source result (reporting metadata
    only, never used in computation).
    """

    value: complex
    leading_exponent: float
    claimed_error_order: float
    regime: str


@dataclass(frozen=True)
class LeadingConstants:
    """Per-factor constants entering the predictions.

    Factors are ordered by descending exponent.  ``K`` and ``c1_inv`` matter
    for the leading block (first ``multiplicity`` entries); ``H`` and the
    unimodular ``phase_ratio`` enter the phase-coefficient prediction for
    every factor.
    """

    thetas: tuple
    alphas: tuple
    multiplicity: int
    K: tuple
    c1_inv: tuple
    H: tuple
    phase_ratio: tuple

    def __post_init__(self):
        for r in self.phase_ratio:
            if abs(abs(r) - 1.0) > 1e-12:
                raise SymbolError("phase ratio must be unimodular")
        for v in self.c1_inv:
            if not abs(v) > 0.0:
                raise SymbolError("c1 must be zero-free on the circle")


def _branch_safe(w: complex) -> complex:
    # 1 - conj(chi_h) chi_j has nonnegative real part and vanishes only for
    # coinciding angles, which construction already excludes.
    if abs(w) < 1e-12:
        raise SymbolError("coinciding singular angles break the principal branch")
    return w


def leading_constants(symbol: FHSymbol) -> LeadingConstants:
    """Evaluate the rotating-term constants of all predictions."""
    if symbol.n_factors == 0:
        raise SymbolError("regular symbol has no leading constants")
    factors = symbol.factors_by_alpha
    chis = [f.chi for f in factors]
    alphas = [f.alpha for f in factors]
    K = []
    H = []
    c1_inv = []
    phase_ratio = []
    for j, fj in enumerate(factors):
        kj = 1.0 + 0.0j
        hj = 1.0 + 0.0j
        for h, fh in enumerate(factors):
            if h == j:
                continue
            w = _branch_safe(1.0 - np.conj(chis[h]) * chis[j])
            kj *= w ** (-alphas[h])
            hj *= (w / np.conj(w)) ** alphas[h]
        K.append(complex(kj))
        H.append(complex(hj))
        c1_val = symbol.regular.c1(chis[j])
        c1_inv.append(complex(1.0 / c1_val))
        phase_ratio.append(complex(c1_val / np.conj(c1_val)))
    return LeadingConstants(
        thetas=tuple(f.theta for f in factors),
        alphas=tuple(alphas),
        multiplicity=symbol.leading_multiplicity,
        K=tuple(K),
        c1_inv=tuple(c1_inv),
        H=tuple(H),
        phase_ratio=tuple(phase_ratio),
    )


def _zero_prediction(regime: str) -> AsymptoticPrediction:
    return AsymptoticPrediction(0.0 + 0.0j, -math.inf, -math.inf, regime)


def _leading_sum(constants: LeadingConstants, k: int) -> complex:
    total = 0.0 + 0.0j
    for j in range(constants.multiplicity):
        chi_bar_k = cmath.exp(-1j * constants.thetas[j] * k)
        total += constants.K[j] * chi_bar_k * constants.c1_inv[j]
    return total


def _tau1(alpha1: float) -> float:
    return alpha1 if alpha1 > 0 else alpha1 - 0.5


def beta_asymptotic(symbol: FHSymbol, k: int) -> AsymptoticPrediction:
    """Large-k prediction for the coefficients of 1/g."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if symbol.n_factors == 0:
        # Regular symbols have superpolynomially small coefficients.
        return _zero_prediction("regular_zero")
    a1 = symbol.alpha_max
    constants = leading_constants(symbol)
    value = k ** (a1 - 1.0) / gamma_function(a1) * _leading_sum(constants, k)
    return AsymptoticPrediction(value, a1 - 1.0, _tau1(a1) - 1.0, "series_beta")


def gamma_asymptotic(symbol: FHSymbol, k: int) -> AsymptoticPrediction:
    """Large-k prediction for the phase coefficients gamma at index -k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if symbol.n_factors == 0:
        return _zero_prediction("regular_zero")
    constants = leading_constants(symbol)
    total = 0.0 + 0.0j
    for j in range(symbol.n_factors):
        rot = cmath.exp(1j * constants.thetas[j] * k)
        total += (
            math.sin(math.pi * constants.alphas[j])
            / math.pi
            * constants.H[j]
            * constants.phase_ratio[j]
            * rot
        )
    a1 = symbol.alpha_max
    return AsymptoticPrediction(
        total / k, -1.0, min(a1 - 1.0, -1.0), "series_gamma"
    )


def entry_asymptotic(symbol: FHSymbol, order: int, k: int) -> AsymptoticPrediction:
    """Interior-depth prediction for the inverse first column.

    Predicts ``column_k / beta_0`` for k in the open bulk 0 < k < N; the
    endpoints sit outside the covered regime and are rejected.
    """
    if symbol.n_factors == 0:
        return _zero_prediction("regular_zero")
    if not 1 <= k <= order - 1:
        raise ValueError("need 1 <= k <= N-1 (boundary depths are not covered)")
    if any(f.theta == 0.0 for f in symbol.factors):
        raise SymbolError(
            "origin singularities are served by predizero_special, not the "
            "interior-depth formula"
        )
    a1 = symbol.alpha_max
    constants = leading_constants(symbol)
    value = (
        k ** (a1 - 1.0)
        / gamma_function(a1)
        * (1.0 - k / order) ** a1
        * _leading_sum(constants, k)
    )
    return AsymptoticPrediction(value, a1 - 1.0, a1 - 1.0, "interior_x")


def gegenbauer_phase(alpha: float, theta0: float, regular=None):
    """Oscillation data (amplitude, phase offset) for the conjugate-pair case.

    The leading rotating sum collapses to ``amplitude * cos(k*theta0 - omega)``
    with ``omega = alpha*pi/2 - alpha*theta0 - arg(c1(chi0))``.
    """
    symbol = gegenbauer_symbol(alpha, theta0, regular)
    constants = leading_constants(symbol)
    # The pair's rotating sum is K1 * conj(chi0)^k / c1(chi0) plus its
    # conjugate, i.e. 2|a| cos(k*theta0 - arg a); arg a expands to the stated
    # omega (for c = 1 it reduces to alpha*pi/2 - alpha*theta0).
    a = constants.K[0] * constants.c1_inv[0]
    return 2.0 * abs(a), cmath.phase(a)


@dataclass(frozen=True)
class GegenbauerPrediction:
    """Both readings of the conjugate-pair entry prediction.

    ``specialized`` evaluates the general interior-depth formula on the
    two-factor symbol (the ground truth); ``closed_form`` evaluates the
    literal cosine constant ``2^(1-a) (sin t0)^(-a) sqrt(1/c1(chi0))`` with
    phase offset ``+omega``, kept for comparison (it disagrees with the
    specialization in the offset sign and, for non-unit regular parts, in the
    constant; the two coincide for c = 1 at t0 = pi/2).
    """

    specialized: AsymptoticPrediction
    closed_form: AsymptoticPrediction
    omega: float
    theta0: float


def gegenbauer_asymptotic(
    alpha: float, theta0: float, regular, order: int, k: int
) -> GegenbauerPrediction:
    """Conjugate-pair entry prediction via both the general formula and the
    literal cosine constant."""
    symbol = gegenbauer_symbol(alpha, theta0, regular)
    specialized = entry_asymptotic(symbol, order, k)
    amplitude, omega = gegenbauer_phase(alpha, theta0, regular)
    chi0 = cmath.exp(1j * theta0)
    c1_inv = 1.0 / symbol.regular.c1(chi0)
    literal_amp = 2.0 ** (1.0 - alpha) * math.sin(theta0) ** (-alpha) * cmath.sqrt(
        c1_inv
    )
    envelope = k ** (alpha - 1.0) * (1.0 - k / order) ** alpha / gamma_function(alpha)
    closed = AsymptoticPrediction(
        literal_amp * math.cos(k * theta0 + omega) * envelope,
        alpha - 1.0,
        alpha - 1.0,
        "interior_x",
    )
    return GegenbauerPrediction(specialized, closed, omega, theta0)


def small_k_entry(symbol: FHSymbol, order: int, k: int) -> AsymptoticPrediction:
    """Fixed-k prediction: the normalized entry equals beta_k up to O(1/N).

    The predicted value is the exact coefficient beta_k of 1/g (computed from
    the series, under the convention that exact columns are divided by
    beta_0), with claimed error order -1 in N.
    """
    if not 0 <= k <= order:
        raise ValueError("need 0 <= k <= N")
    from .symbols import g_inv_series

    length = max(256, 4 * (k + 1))
    beta = g_inv_series(symbol, length).coeffs
    a1 = symbol.alpha_max if symbol.n_factors else -math.inf
    return AsymptoticPrediction(complex(beta[k]), a1 - 1.0, -1.0, "small_k_over_N")


def predizero_special(
    alpha: float, regular, order: int, x: float
) -> AsymptoticPrediction:
    """Origin-singularity bridge: prediction for the depth-[Nx] entry.

    For the weight ``|1 - e^{i theta}|^(2 alpha) * c`` (origin singularity;
    the cosine-power form differs by an explicit ``2^(-alpha)`` scale) the
    entry at k = [N x] obeys

        c(1) * column_k = N^(alpha-1) * x^(alpha-1) * (1-x)^alpha / Gamma(alpha)

    up to o(N^(alpha-1)), uniformly on interior compacts of (0, 1).
    """
    if not (-0.5 < alpha <= 0.5) or alpha == 0.0:
        raise ValueError("alpha must lie in (-1/2, 1/2] and be nonzero")
    if not 0.0 < x < 1.0:
        raise ValueError("x must lie in (0, 1)")
    symbol = origin_symbol(alpha, regular)
    c_at_one = symbol.regular.c(0.0)
    value = (
        order ** (alpha - 1.0)
        * x ** (alpha - 1.0)
        * (1.0 - x) ** alpha
        / (gamma_function(alpha) * c_at_one)
    )
    return AsymptoticPrediction(value, alpha - 1.0, alpha - 1.0, "special_predizero")


# ---------------------------------------------------------------------------
# Comparison records


@dataclass(frozen=True)
class ComparisonRecord:
    """Exact-vs-predicted comparison row (see COMPARISON_CSV_HEADER)."""

    regime: str
    order: int | None
    k: int | None
    x: float | None
    exact: complex
    predicted: complex
    ratio: float
    ratio_defined: bool
    abs_err: float
    normalized_err: float


COMPARISON_CSV_HEADER = (
    "regime,N,k,x,exact_re,exact_im,pred_re,pred_im,ratio,abs_err,normalized_err"
)


def compare(
    exact: complex,
    prediction: AsymptoticPrediction,
    order: int | None = None,
    k: int | None = None,
    x: float | None = None,
) -> ComparisonRecord:
    """Build a comparison record for an exact value against a prediction.

    The error is normalized by the claimed order: ``base**claimed_error_order``
    with base k for the k-indexed regimes and N for the N-indexed ones.
    """
    exact = complex(exact)
    predicted = complex(prediction.value)
    abs_err = abs(exact - predicted)
    defined = exact != 0 and predicted != 0
    ratio = abs(exact / predicted) if predicted != 0 else math.nan
    if not defined:
        ratio = math.nan
    if prediction.regime in ("small_k_over_N", "special_predizero"):
        base = order
    else:
        base = k
    if base and math.isfinite(prediction.claimed_error_order):
        normalized = abs_err / base ** prediction.claimed_error_order
    else:
        normalized = math.nan
    return ComparisonRecord(
        prediction.regime, order, k, x, exact, predicted, ratio, defined, abs_err,
        normalized,
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_comparison_csv(records, path) -> None:
    """Serialize comparison records with 17-significant-digit floats."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(COMPARISON_CSV_HEADER + "\n")
        for r in records:
            fields = [
                r.regime,
                _fmt(r.order),
                _fmt(r.k),
                _fmt(r.x),
                _fmt(r.exact.real),
                _fmt(r.exact.imag),
                _fmt(r.predicted.real),
                _fmt(r.predicted.imag),
                _fmt(r.ratio),
                _fmt(r.abs_err),
                _fmt(r.normalized_err),
            ]
            fh.write(",".join(fields) + "\n")
