"""Shared desk-scale fixture symbols.

Six symbols spanning one to three singular factors, leading exponents in
{-0.25, 0.25, 0.4} and both regular parts (unit and a rational one), plus the
origin-bridge weight.  The same definitions back the test suite and the
``demo`` CLI subcommand.
"""

from __future__ import annotations

import math

from .symbols import FHSymbol, RationalRegularPart, make_symbol, origin_symbol

__all__ = ["RATIONAL_PART", "FIXTURES", "fixture", "fixture_json"]

RATIONAL_PART = ((1.0, 0.5), (1.0, -0.3))


def _build():
    rp, rq = RATIONAL_PART
    return {
        "m1_pos": make_symbol([(math.pi, 0.25)]),
        "gegenbauer": make_symbol([(math.pi / 2, 0.25), (3 * math.pi / 2, 0.25)]),
        "m1_neg_rational": make_symbol([(2 * math.pi / 3, -0.25)], rp, rq),
        "m2_strong_rational": make_symbol(
            [(2 * math.pi / 5, 0.4), (8 * math.pi / 5, 0.4)], rp, rq
        ),
        "m3_mixed": make_symbol([(math.pi / 3, 0.4), (math.pi, 0.25), (8 * math.pi / 5, -0.25)]),
        "m3_neg_rational": make_symbol(
            [(2 * math.pi / 7, -0.25), (math.pi, -0.25), (12 * math.pi / 7, -0.25)],
            rp,
            rq,
        ),
    }


FIXTURES = _build()


def fixture(name: str) -> FHSymbol:
    return FIXTURES[name]


def origin_bridge(alpha: float = 0.25) -> FHSymbol:
    """The origin-singularity weight used by the bridge prediction."""
    return origin_symbol(alpha, RationalRegularPart.one())


def fixture_json(name: str) -> dict:
    """JSON-schema form of a fixture (exact rational angles where possible)."""
    symbol = FIXTURES[name]
    factors = []
    for f in symbol.factors:
        frac = f.theta / math.pi
        # All fixture angles are rational multiples of pi by construction.
        from fractions import Fraction

        ratio = Fraction(frac).limit_denominator(64)
        factors.append({"theta_over_pi": f"{ratio.numerator}/{ratio.denominator}",
                        "alpha": f.alpha})
    return {
        "factors": factors,
        "regular": {"p": list(symbol.regular.p_coeffs), "q": list(symbol.regular.q_coeffs)},
    }
