"""Fisher-Hartwig symbols and their truncated Fourier series.

A symbol is a nonnegative weight on the unit circle,

    f(theta) = prod_j |1 - exp(i*(theta - theta_j))|**(2*alpha_j) * c(theta),

with power-type singular points at angles ``theta_j`` (exponents
``-1/2 < alpha_j < 1/2``) and a rational regular part ``c = |P/Q|**2``.
The analytic factorization ``f = g * conj(g)`` uses

    g = prod_j (1 - conj(chi_j)*chi)**alpha_j * P/Q,   chi_j = exp(i*theta_j),

with principal-branch powers.  This module produces controlled truncations of
the coefficient sequences of ``g``, ``1/g`` (the ``beta_k``), the unimodular
phase ``g/conj(g)`` (the ``gamma_u``) and of ``f`` itself.

Fourier coefficients always mean ``fhat(k) = (1/2pi) * integral f(t) e^{-ikt} dt``,
so analytic functions have support on nonnegative indices.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.signal import lfilter

from .series import LaurentSeries, convolve_coeffs

__all__ = [
    "SymbolError",
    "SingularPointError",
    "TruncationBudgetError",
    "SingularFactor",
    "RationalRegularPart",
    "FHSymbol",
    "make_symbol",
    "gegenbauer_symbol",
    "origin_symbol",
    "parse_symbol",
    "binomial_series",
    "c1_series",
    "c1_inv_series",
    "g_series",
    "g_inv_series",
    "phase_series",
    "fhat",
    "fhat_range",
    "eval_symbol",
]

TWO_PI = 2.0 * math.pi

_THETA_SEP_TOL = 1e-9
_TIE_TOL = 1e-12
_NEAR_TIE_TOL = 1e-6
_CIRCLE_TOL = 1e-9


class SymbolError(ValueError):
    """Invalid symbol data (exponent range, angle collisions, bad rational part)."""


class SingularPointError(SymbolError):
    """Pointwise evaluation requested at a blow-up singularity."""


class TruncationBudgetError(RuntimeError):
    """Requested series length is too short for the declared tail decay."""


@dataclass(frozen=True)
class SingularFactor:
    """One singular factor |1 - e^{i(theta - theta_j)}|^{2 alpha_j}.

    ``theta`` in radians; the singular point on the circle is exp(i*theta).
    """

    theta: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.alpha)):
            raise SymbolError("theta and alpha must be finite")
        if not 0.0 <= self.theta < TWO_PI:
            raise SymbolError(f"theta must lie in [0, 2*pi), got {self.theta}")
        if self.alpha == 0.0:
            raise SymbolError("alpha = 0 factors must be dropped at construction")
        # The upper endpoint alpha = 1/2 is reserved for the origin-bridge
        # construction; FHSymbol enforces the strict range for ordinary symbols.
        if not -0.5 < self.alpha <= 0.5:
            raise SymbolError(f"alpha must lie in (-1/2, 1/2), got {self.alpha}")

    @property
    def chi(self) -> complex:
        return cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class RationalRegularPart:
    """Regular part c = |P/Q|^2 with real polynomials, both zero-free on the
    closed unit disk (so P/Q and Q/P are analytic there)."""

    p_coeffs: tuple
    q_coeffs: tuple

    def __post_init__(self):
        p = _as_real_poly(self.p_coeffs, "p")
        q = _as_real_poly(self.q_coeffs, "q")
        object.__setattr__(self, "p_coeffs", p)
        object.__setattr__(self, "q_coeffs", q)
        if q[0] == 0.0:
            raise SymbolError("Q(0) must be nonzero")
        if p[0] == 0.0:
            raise SymbolError("P(0) must be nonzero (P must be zero-free in the disk)")
        for name, coeffs in (("P", p), ("Q", q)):
            roots = np.polynomial.polynomial.polyroots(np.asarray(coeffs))
            if len(roots) and np.min(np.abs(roots)) <= 1.0 + _CIRCLE_TOL:
                raise SymbolError(
                    f"{name} must be zero-free on the closed unit disk "
                    f"(smallest root modulus {np.min(np.abs(roots)):.6g})"
                )
            # Redundant with the root check, but cheap: no zeros on a dense
            # angular grid of the circle itself.
            grid = np.exp(1j * np.linspace(0.0, TWO_PI, 4096, endpoint=False))
            vals = np.polynomial.polynomial.polyval(grid, np.asarray(coeffs))
            if np.min(np.abs(vals)) <= _CIRCLE_TOL:
                raise SymbolError(f"{name} vanishes on the unit circle")

    @classmethod
    def one(cls) -> "RationalRegularPart":
        return cls((1.0,), (1.0,))

    @property
    def is_one(self) -> bool:
        return self.p_coeffs == (1.0,) and self.q_coeffs == (1.0,)

    def c1(self, z) -> complex:
        """Analytic factor c1 = P/Q evaluated at z."""
        pv = np.polynomial.polynomial.polyval(z, np.asarray(self.p_coeffs))
        qv = np.polynomial.polynomial.polyval(z, np.asarray(self.q_coeffs))
        return pv / qv

    def c(self, theta: float) -> float:
        """Pointwise regular-part value |c1(e^{i theta})|^2."""
        return float(abs(self.c1(cmath.exp(1j * theta))) ** 2)


def _as_real_poly(coeffs, name):
    try:
        vals = tuple(float(v) for v in coeffs)
    except (TypeError, ValueError) as exc:
        raise SymbolError(f"{name} coefficients must be real numbers") from exc
    if not vals or not any(v != 0.0 for v in vals):
        raise SymbolError(f"{name} must be a nonzero polynomial")
    if not all(math.isfinite(v) for v in vals):
        raise SymbolError(f"{name} coefficients must be finite")
    # Strip trailing zeros so degrees are meaningful.
    deg = max(i for i, v in enumerate(vals) if v != 0.0)
    return vals[: deg + 1]


@dataclass(frozen=True)
class FHSymbol:
    """A Fisher-Hartwig weight: singular factors plus a rational regular part.

    ``bridge_origin=True`` marks the special construction with a singularity
    at angle 0 (and exponent possibly equal to 1/2) used to bridge with the
    one-singularity prediction formula; ordinary symbols keep all angles in
    the open interval (0, 2*pi) and exponents strictly inside (-1/2, 1/2).
    """

    factors: tuple
    regular: RationalRegularPart
    bridge_origin: bool = False

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not self.bridge_origin:
            for f in factors:
                if f.theta == 0.0:
                    raise SymbolError(
                        "theta = 0 is reserved for the origin-bridge symbol"
                    )
                if not -0.5 < f.alpha < 0.5:
                    raise SymbolError("alpha must lie in (-1/2, 1/2)")
        thetas = [f.theta for f in factors]
        for i in range(len(thetas)):
            for j in range(i + 1, len(thetas)):
                d = abs(thetas[i] - thetas[j])
                d = min(d, TWO_PI - d)
                if d <= _THETA_SEP_TOL:
                    raise SymbolError(
                        f"duplicate singular angles: factors {i} and {j} "
                        f"(theta {thetas[i]!r} vs {thetas[j]!r})"
                    )
        if factors:
            alphas = sorted((f.alpha for f in factors), reverse=True)
            near = [
                a
                for a in alphas[1:]
                if abs(a - alphas[0]) < _NEAR_TIE_TOL
                and abs(a - alphas[0]) >= _TIE_TOL
            ]
            if near:
                warnings.warn(
                    "leading exponents are nearly but not exactly tied; the "
                    "asymptotic regimes are ill-separated",
                    stacklevel=3,
                )

    @property
    def n_factors(self) -> int:
        return len(self.factors)

    @cached_property
    def factors_by_alpha(self) -> tuple:
        """Factors sorted by descending exponent (ties keep input order)."""
        return tuple(
            sorted(self.factors, key=lambda f: -f.alpha)
        )

    @property
    def alpha_max(self) -> float:
        if not self.factors:
            raise SymbolError("regular symbol has no singular exponents")
        return self.factors_by_alpha[0].alpha

    @cached_property
    def leading_multiplicity(self) -> int:
        """Number of factors whose exponent ties the maximum within 1e-12."""
        a1 = self.alpha_max
        return sum(1 for f in self.factors if abs(f.alpha - a1) < _TIE_TOL)

    @cached_property
    def leading_factors(self) -> tuple:
        return self.factors_by_alpha[: self.leading_multiplicity]

    def beta0(self) -> float:
        """Zeroth coefficient of 1/g, i.e. Q(0)/P(0) (the factors contribute 1)."""
        return float(self.regular.q_coeffs[0] / self.regular.p_coeffs[0])


def make_symbol(factors=(), p=(1.0,), q=(1.0,)) -> FHSymbol:
    """Build a symbol from (theta, alpha) pairs; alpha = 0 entries are dropped."""
    kept = tuple(
        SingularFactor(float(t), float(a)) for (t, a) in factors if float(a) != 0.0
    )
    return FHSymbol(kept, RationalRegularPart(tuple(p), tuple(q)))


def gegenbauer_symbol(alpha: float, theta0: float, regular=None) -> FHSymbol:
    """Conjugate-pair symbol with singularities at +-theta0 and equal exponents."""
    if not 0.0 < theta0 < math.pi:
        raise SymbolError("theta0 must lie in (0, pi)")
    regular = regular if regular is not None else RationalRegularPart.one()
    return FHSymbol(
        (SingularFactor(theta0, alpha), SingularFactor(TWO_PI - theta0, alpha)),
        regular,
    )


def origin_symbol(alpha: float, regular=None) -> FHSymbol:
    """Single singularity at angle 0, exponent in (-1/2, 1/2] \\ {0}.

    This is the weight |1 - e^{i theta}|^{2 alpha} * c, i.e. the classical
    one-singularity case written without the 2^{-alpha} cosine scaling.
    """
    if not -0.5 < alpha <= 0.5 or alpha == 0.0:
        raise SymbolError("alpha must lie in (-1/2, 1/2] and be nonzero")
    regular = regular if regular is not None else RationalRegularPart.one()
    return FHSymbol((SingularFactor(0.0, alpha),), regular, bridge_origin=True)


# ---------------------------------------------------------------------------
# JSON description files


def parse_symbol(obj) -> FHSymbol:
    """Parse the JSON symbol description.

    Schema: ``{"factors": [{"theta": <rad>} | {"theta_over_pi": "p/q"},
    "alpha": <num>], "regular": {"p": [...], "q": [...]}}``.  A missing
    ``regular`` means c = 1.  Raises :class:`SymbolError` with the offending
    field named.
    """
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SymbolError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SymbolError("symbol description must be a JSON object")
    factors = []
    for i, raw in enumerate(obj.get("factors", [])):
        if not isinstance(raw, dict):
            raise SymbolError(f"factors[{i}] must be an object")
        if "theta_over_pi" in raw:
            try:
                frac = Fraction(str(raw["theta_over_pi"]))
            except (ValueError, ZeroDivisionError) as exc:
                raise SymbolError(
                    f"factors[{i}].theta_over_pi must be a rational like '1/2'"
                ) from exc
            theta = float(frac) * math.pi
        elif "theta" in raw:
            theta = float(raw["theta"])
        else:
            raise SymbolError(f"factors[{i}] needs 'theta' or 'theta_over_pi'")
        if "alpha" not in raw:
            raise SymbolError(f"factors[{i}] needs 'alpha'")
        factors.append((theta, float(raw["alpha"])))
    reg = obj.get("regular")
    if reg is None:
        p, q = (1.0,), (1.0,)
    else:
        if not isinstance(reg, dict) or "p" not in reg or "q" not in reg:
            raise SymbolError("regular must be an object with 'p' and 'q' lists")
        p, q = tuple(reg["p"]), tuple(reg["q"])
    return make_symbol(factors, p, q)


# ---------------------------------------------------------------------------
# Series construction


def binomial_series(alpha: float, chi: complex, sign: int, L: int) -> LaurentSeries:
    """Coefficients of ``(1 - conj(chi)*chi_var)**(sign*alpha)``.

    The coefficient at index u is ``b_u * conj(chi)**u`` with ``b_0 = 1`` and
    ``b_{u+1} = b_u * (u + a)/(u + 1)`` where ``a = -sign*alpha``; the tail
    decays like ``u**(a-1)``.
    """
    if abs(alpha) >= 1.0:
        raise SymbolError("binomial exponent must satisfy |alpha| < 1")
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    if L < 1:
        raise ValueError("L must be >= 1")
    if abs(abs(chi) - 1.0) > 1e-9:
        raise SymbolError("chi must lie on the unit circle")
    a = -sign * alpha
    u = np.arange(L - 1, dtype=np.float64)
    b = np.concatenate(([1.0], np.cumprod((u + a) / (u + 1.0))))
    theta = cmath.phase(chi)
    coeffs = b * np.exp(-1j * theta * np.arange(L))
    return LaurentSeries.analytic(coeffs, tail_exponent=a - 1.0)


def _power_series_ratio(num, den, L: int) -> np.ndarray:
    """First L coefficients of num(z)/den(z) by synthetic long division."""
    impulse = np.zeros(L)
    impulse[0] = 1.0
    return lfilter(np.asarray(num, dtype=float), np.asarray(den, dtype=float), impulse)


def c1_series(regular: RationalRegularPart, L: int) -> LaurentSeries:
    """Analytic power series of c1 = P/Q (geometric tail)."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return LaurentSeries.analytic(
        _power_series_ratio(regular.p_coeffs, regular.q_coeffs, L).astype(complex)
    )


def c1_inv_series(regular: RationalRegularPart, L: int) -> LaurentSeries:
    """Analytic power series of 1/c1 = Q/P (P is zero-free in the disk)."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return LaurentSeries.analytic(
        _power_series_ratio(regular.q_coeffs, regular.p_coeffs, L).astype(complex)
    )


def _check_budget(coeffs: np.ndarray, what: str) -> None:
    # The kept window must reach the decaying tail: the trailing block may not
    # still be at the scale of the peak coefficient.
    L = len(coeffs)
    if L < 2:
        return
    tail = np.max(np.abs(coeffs[-max(2, L // 32) :]))
    peak = np.max(np.abs(coeffs))
    if peak > 0 and tail > 0.5 * peak:
        raise TruncationBudgetError(
            f"series length {L} too short for {what}: trailing coefficients "
            f"({tail:.3g}) have not decayed below half the peak ({peak:.3g})"
        )


def _product_series(symbol: FHSymbol, sign: int, L: int) -> np.ndarray:
    if sign == 1:
        out = _power_series_ratio(symbol.regular.p_coeffs, symbol.regular.q_coeffs, L)
    else:
        out = _power_series_ratio(symbol.regular.q_coeffs, symbol.regular.p_coeffs, L)
    out = out.astype(complex)
    for f in symbol.factors:
        part = binomial_series(f.alpha, f.chi, sign, L)
        out = convolve_coeffs(out, part.coeffs)[:L]
    return out


def _series_tail_exponent(symbol: FHSymbol, sign: int) -> float:
    if not symbol.factors:
        return -math.inf
    # Slowest-decaying factor dominates: exponent -sign*alpha - 1.
    return max(-sign * f.alpha - 1.0 for f in symbol.factors)


def g_series(symbol: FHSymbol, L: int) -> LaurentSeries:
    """Truncated coefficients of the analytic factor g."""
    if L < 1:
        raise ValueError("L must be >= 1")
    coeffs = _product_series(symbol, +1, L)
    _check_budget(coeffs, "g")
    return LaurentSeries.analytic(coeffs, _series_tail_exponent(symbol, +1))


def g_inv_series(symbol: FHSymbol, L: int) -> LaurentSeries:
    """Truncated coefficients beta_k of 1/g."""
    if L < 1:
        raise ValueError("L must be >= 1")
    coeffs = _product_series(symbol, -1, L)
    _check_budget(coeffs, "1/g")
    return LaurentSeries.analytic(coeffs, _series_tail_exponent(symbol, -1))


def phase_series(symbol: FHSymbol, L: int) -> LaurentSeries:
    """Coefficients gamma_u of the unimodular phase g/conj(g), |u| <= L.

    Computed as ``gamma_u = sum_{v >= max(0,u)} ghat(v) * conj(beta_{v-u})``
    with inner series of length 2L+2, so every reported coefficient carries at
    least L inner terms and the window energy approaches 1 from below.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    inner = 2 * L + 2
    g = _product_series(symbol, +1, inner)
    beta = _product_series(symbol, -1, inner)
    _check_budget(g, "g")
    _check_budget(beta, "1/g")
    full = convolve_coeffs(g, np.conj(beta)[::-1])
    # full[pos] holds index u = pos - (inner - 1).
    center = inner - 1
    coeffs = full[center - L : center + L + 1]
    return LaurentSeries(-L, L, coeffs, tail_exponent=-1.0)


def fhat_range(symbol: FHSymbol, kmax: int, L: int) -> np.ndarray:
    """Fourier coefficients fhat(0..kmax) via the g autocorrelation."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    if kmax > L // 2:
        raise ValueError(f"need |k| <= L/2 (k={kmax}, L={L})")
    g = _product_series(symbol, +1, L)
    _check_budget(g, "g")
    full = convolve_coeffs(g, np.conj(g)[::-1])
    out = np.array(full[L - 1 : L + kmax], dtype=np.complex128)
    out[0] = out[0].real
    return out


def fhat(symbol: FHSymbol, k: int, L: int) -> complex:
    """Single Fourier coefficient fhat(k); Hermitian in k by construction."""
    value = complex(fhat_range(symbol, abs(k), L)[abs(k)])
    return value.conjugate() if k < 0 else value


def eval_symbol(symbol: FHSymbol, theta: float) -> float:
    """Pointwise value f(theta).

    Returns exactly 0 at a singular angle with positive exponent and raises
    :class:`SingularPointError` at one with negative exponent.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    value = symbol.regular.c(theta)
    for f in symbol.factors:
        d = math.remainder(theta - f.theta, TWO_PI)
        s = 2.0 * abs(math.sin(0.5 * d))
        if s < 1e-12:
            if f.alpha < 0:
                raise SingularPointError(
                    f"f blows up at theta = {f.theta!r} (alpha = {f.alpha})"
                )
            return 0.0
        value *= s ** (2.0 * f.alpha)
    return value
