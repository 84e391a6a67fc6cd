"""Second, independent route to inverse-Toeplitz entries.

Entries of the inverse section are evaluated through Hardy-space projections
and Hankel operators with the unimodular symbol ``Phi_N = (g/conj(g)) *
chi^(N+1)``: a two-term formula whose series part is a Neumann sum of
``(H* H)^s`` applications.  The same expansion, written out coefficientwise,
yields the correction-weight sequence and the smooth correction kernel that
drive the closed-form entry asymptotics.  Everything here is a cross-check
path; production solves go through the Levinson recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .series import LaurentSeries
from .symbols import FHSymbol, g_inv_series, phase_series

__all__ = [
    "ContractionError",
    "CutoffOverflowError",
    "HankelOperatorData",
    "project_plus",
    "project_minus",
    "build_hankel_operator",
    "hankel_apply",
    "contraction_estimate",
    "neumann_entry",
    "neumann_first_column",
    "entry_correction_weight",
    "entry_correction_weights",
    "correction_kernel",
    "KernelEstimate",
]


class ContractionError(RuntimeError):
    """The Neumann series is not contracting within the requested cutoff."""


class CutoffOverflowError(RuntimeError):
    """Convolution support exceeds the operator's retained index window."""


def project_plus(series: LaurentSeries) -> LaurentSeries:
    """Orthogonal projection onto nonnegative indices (analytic part)."""
    if series.min_index >= 0:
        return series
    if series.max_index < 0:
        return LaurentSeries(0, 0, np.zeros(1, dtype=np.complex128))
    return series.window(0, series.max_index)


def project_minus(series: LaurentSeries) -> LaurentSeries:
    """Orthogonal projection onto negative indices."""
    if series.max_index < 0:
        return series
    if series.min_index >= 0:
        return LaurentSeries(-1, -1, np.zeros(1, dtype=np.complex128))
    return series.window(series.min_index, -1)


@dataclass(frozen=True)
class HankelOperatorData:
    """Shifted-phase symbol Phi_N and the retained index window.

    ``phi_series`` holds the coefficients of ``(g/conj(g)) * chi^(N+1)``;
    ``cutoff`` bounds the index support of any series the operator is applied
    to.
    """

    phi_series: LaurentSeries
    order: int
    cutoff: int

    def phi_bar_series(self) -> LaurentSeries:
        return self.phi_series.conjugate_reflect()


def build_hankel_operator(symbol: FHSymbol, order: int, cutoff: int) -> HankelOperatorData:
    """Assemble Phi_N from the phase coefficients at window half-width ``cutoff``."""
    gamma = phase_series(symbol, cutoff)
    return HankelOperatorData(gamma.shifted(order + 1), order, cutoff)


def hankel_apply(
    op: HankelOperatorData, psi: LaurentSeries, adjoint: bool = False
) -> LaurentSeries:
    """Apply the Hankel operator: ``pi_-(Phi_N psi)``, or ``pi_+(conj(Phi_N) psi)``
    when ``adjoint`` is set (acting on the anti-analytic side)."""
    if adjoint:
        if psi.max_index >= 0 and np.any(psi.window(0, max(psi.max_index, 0)).coeffs):
            raise ValueError("adjoint application expects an anti-analytic series")
        if -psi.min_index > op.cutoff + op.order + 1:
            raise CutoffOverflowError("series support exceeds the operator window")
        return project_plus(op.phi_bar_series().multiply(psi))
    if psi.min_index < 0 and np.any(psi.window(psi.min_index, -1).coeffs):
        raise ValueError("forward application expects an analytic series")
    if psi.max_index > op.cutoff + op.order + 1:
        raise CutoffOverflowError("series support exceeds the operator window")
    return project_minus(op.phi_series.multiply(psi))


def contraction_estimate(op: HankelOperatorData, iters: int = 6) -> float:
    """Power-iteration estimate of the operator norm of H* H on the window."""
    start = project_plus(op.phi_bar_series())
    norm = math.sqrt(start.norm2())
    if norm == 0.0:
        return 0.0
    current = start
    for _ in range(iters):
        current = hankel_apply(op, hankel_apply(op, current), adjoint=True)
        new_norm = math.sqrt(current.norm2())
        if new_norm == 0.0:
            return 0.0
    return (new_norm / norm) ** (1.0 / iters)


def _analytic_tail(beta: np.ndarray, m: int) -> LaurentSeries:
    # pi_+(chi^m / conj(g)): coefficient at u in [0, m] is conj(beta_{m-u}).
    return LaurentSeries.analytic(np.conj(beta[m::-1]))


@dataclass(frozen=True)
class _NeumannState:
    op: HankelOperatorData
    beta: np.ndarray
    accumulated: LaurentSeries
    ratio: float
    tail_estimate: float


def _neumann_chain(symbol, order, source_index, s_max, cutoff) -> _NeumannState:
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    op = build_hankel_operator(symbol, order, cutoff)
    beta = g_inv_series(symbol, cutoff + 1).coeffs
    psi = _analytic_tail(beta, source_index)
    term = project_plus(op.phi_bar_series().multiply(psi))
    acc = term
    prev_norm = math.sqrt(term.norm2())
    ratio = 0.0
    norm = prev_norm
    for _ in range(s_max):
        if norm == 0.0:
            break
        term = hankel_apply(op, hankel_apply(op, term), adjoint=True)
        acc = acc.add(term)
        norm = math.sqrt(term.norm2())
        if prev_norm > 0.0:
            ratio = norm / prev_norm
            if ratio >= 1.0:
                raise ContractionError(
                    f"Neumann series not contracting within cutoff {cutoff} "
                    f"(measured ratio {ratio:.3f})"
                )
        prev_norm = norm
    tail = norm * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    return _NeumannState(op, beta, acc, ratio, tail)


def neumann_entry(
    symbol: FHSymbol,
    order: int,
    k: int,
    l: int,
    s_max: int = 16,
    cutoff: int = 4096,
    full_output: bool = False,
):
    """Inverse-section entry ``(T^-1)[k, l]`` by the two-term inversion formula.

    The first term is the finite product ``sum_u conj(beta_{l-u}) beta_{k-u}``
    in disguise; the second truncates the Neumann series over ``(H* H)^s`` at
    ``s_max`` terms with index support ``cutoff``.  With ``full_output`` the
    measured contraction ratio and its geometric tail estimate are returned
    alongside the value.
    """
    if not (0 <= k <= order and 0 <= l <= order):
        raise ValueError("need 0 <= k, l <= N")
    state = _neumann_chain(symbol, order, l, s_max, cutoff)
    psi_k = _analytic_tail(state.beta, k)
    psi_l = _analytic_tail(state.beta, l)
    first = psi_l.inner(psi_k)
    v_k = project_plus(state.op.phi_bar_series().multiply(psi_k))
    second = state.accumulated.inner(v_k)
    value = complex(first - second)
    if full_output:
        return value, {"ratio": state.ratio, "tail_estimate": state.tail_estimate}
    return value


def neumann_first_column(
    symbol: FHSymbol,
    order: int,
    s_max: int = 16,
    cutoff: int = 4096,
) -> np.ndarray:
    """All entries ``(T^-1)[k, 0]`` for k = 0..N, sharing one Neumann chain."""
    state = _neumann_chain(symbol, order, 0, s_max, cutoff)
    psi_0 = _analytic_tail(state.beta, 0)
    out = np.empty(order + 1, dtype=np.complex128)
    for k in range(order + 1):
        psi_k = _analytic_tail(state.beta, k)
        v_k = project_plus(state.op.phi_bar_series().multiply(psi_k))
        out[k] = psi_0.inner(psi_k) - state.accumulated.inner(v_k)
    return out


# ---------------------------------------------------------------------------
# Coefficientwise expansion: correction weights and the smooth kernel


def _negative_phase_tail(symbol: FHSymbol, order: int, n_max: int) -> np.ndarray:
    # gneg[m] = gamma_{-m} for m = 0 .. N + 2*n_max + 1.
    need = order + 2 * n_max + 1
    gamma = phase_series(symbol, need)
    # coeffs[i] holds index i - need, so gamma_{-m} sits at position need - m.
    return np.ascontiguousarray(gamma.coeffs[need::-1])


def _correction_accumulator(symbol, order, p_max, n_max):
    gneg = _negative_phase_tail(symbol, order, n_max)
    y = np.conj(gneg[order + 1 : order + 1 + n_max])
    kernel_vals = gneg[order + 2 : order + 2 + 2 * n_max - 1]
    acc = y.copy()
    prev = np.linalg.norm(y)
    for _ in range(p_max):
        if prev == 0.0:
            break
        z = kernels.hankel_matvec(kernel_vals, y)
        y = kernels.hankel_matvec(np.conj(kernel_vals), z)
        acc += y
        norm = np.linalg.norm(y)
        if norm >= prev:
            raise ContractionError(
                f"correction-weight chain not contracting within n_max {n_max}"
            )
        prev = norm
    return gneg, acc


def entry_correction_weights(
    symbol: FHSymbol,
    order: int,
    p_max: int = 16,
    n_max: int | None = None,
) -> np.ndarray:
    """Weight sequence W(u), u = 0..N, from the coefficientwise Neumann expansion.

    The first inverse column satisfies ``column_k / beta_0 = beta_k -
    sum_{u<=k} beta_{k-u} W(u)`` up to the declared truncations; each Neumann
    level is one Hankel-kernel product against the negative-index phase tail.
    """
    if n_max is None:
        n_max = max(4 * order, 2048)
    gneg, acc = _correction_accumulator(symbol, order, p_max, n_max)
    out = np.empty(order + 1, dtype=np.complex128)
    for u in range(order + 1):
        closer = gneg[order + 1 - u : order + 1 - u + len(acc)]
        out[u] = np.dot(closer, acc)
    return out


def entry_correction_weight(
    symbol: FHSymbol,
    order: int,
    u: int,
    p_max: int = 16,
    n_max: int | None = None,
) -> complex:
    """Single correction weight W(u) (see :func:`entry_correction_weights`)."""
    if not 0 <= u <= order:
        raise ValueError("need 0 <= u <= N")
    if n_max is None:
        n_max = max(4 * order, 2048)
    gneg, acc = _correction_accumulator(symbol, order, p_max, n_max)
    closer = gneg[order + 1 - u : order + 1 - u + len(acc)]
    return complex(np.dot(closer, acc))


@dataclass(frozen=True)
class KernelEstimate:
    """Correction-kernel value with a geometric estimate of the truncated tail."""

    value: float
    tail_estimate: float
    terms: int


def correction_kernel(
    order: int,
    alpha: float,
    z: float,
    p_max: int = 16,
    n_max: int | None = None,
) -> KernelEstimate:
    """Smooth kernel controlling the entry correction at depth z = u/N.

    Evaluates ``sum_p (sin(pi*alpha)/pi)^(2p+2) * S_p(z)`` where ``S_p`` is the
    (2p+1)-fold iterated sum with link kernel ``1/(N+1+n+n')`` and final factor
    ``1/(1 + 1/N + n/N - z)``, all inner indices truncated at ``n_max`` and
    summed in ascending order.  At z = 0 the value approaches ``alpha**2`` for
    large N; on [0, 1) it obeys a uniform ``K0 * (1 + |log(1 - z + (1+alpha)/N)|)``
    bound with K0 independent of N.
    """
    if not 0.0 <= z < 1.0:
        raise ValueError("z must lie in [0, 1)")
    if not abs(alpha) < 0.5:
        raise ValueError("|alpha| must be < 1/2")
    if order < 1:
        raise ValueError("order must be >= 1")
    if n_max is None:
        n_max = max(4 * order, 2048)
    n = np.arange(n_max, dtype=np.float64)
    w = 1.0 / (1.0 + 1.0 / order + n / order - z)
    closer = 1.0 / (order + 1.0 + n)
    links = 1.0 / (order + 1.0 + np.arange(2 * n_max - 1, dtype=np.float64))
    x = (math.sin(math.pi * alpha) / math.pi) ** 2
    weight = x
    total = weight * float(np.dot(closer, w))
    last_term = total
    terms = 1
    for _ in range(p_max):
        w = kernels.hankel_matvec(links, kernels.hankel_matvec(links, w))
        weight *= x
        term = weight * float(np.dot(closer, w))
        total += term
        terms += 1
        if last_term > 0 and abs(term) < 1e-17 * abs(total):
            last_term = term
            break
        last_term = term
    q = x * math.pi * math.pi / 3.0  # asymptotic term ratio
    tail = abs(last_term) * q / (1.0 - q) if q < 1.0 else math.inf
    return KernelEstimate(float(total), float(tail), terms)
