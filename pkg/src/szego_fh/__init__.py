"""Inverse-Toeplitz coefficients for Fisher-Hartwig symbols.

Exact solvers (Levinson recursion, a Wiener-Hopf/Neumann cross-check path)
and closed-form asymptotics for the predictor-polynomial coefficients of
weights with power-type singularities on the unit circle, cross-validated at
desk scale.
"""

from .asymptotics import (
    AsymptoticPrediction,
    GegenbauerPrediction,
    LeadingConstants,
    beta_asymptotic,
    compare,
    entry_asymptotic,
    gegenbauer_asymptotic,
    gegenbauer_phase,
    leading_constants,
    predizero_special,
    small_k_entry,
)
from .config import ConfigError, ExperimentConfig, validate_config
from .kernels import BACKEND as kernel_backend
from .series import LaurentSeries
from .symbols import (
    FHSymbol,
    RationalRegularPart,
    SingularFactor,
    SingularPointError,
    SymbolError,
    TruncationBudgetError,
    binomial_series,
    c1_series,
    eval_symbol,
    fhat,
    fhat_range,
    g_inv_series,
    g_series,
    gegenbauer_symbol,
    make_symbol,
    origin_symbol,
    parse_symbol,
    phase_series,
)
from .toeplitz import (
    NotPositiveDefiniteError,
    PredictorPolynomial,
    ToeplitzSystem,
    build_system,
    dense_inverse_oracle,
    export_first_column_csv,
    last_column_from_first,
    levinson_first_column,
    szego_polynomial,
    szego_zero_moduli,
)
from .wiener_hopf import (
    ContractionError,
    HankelOperatorData,
    KernelEstimate,
    build_hankel_operator,
    contraction_estimate,
    correction_kernel,
    entry_correction_weight,
    entry_correction_weights,
    hankel_apply,
    neumann_entry,
    neumann_first_column,
    project_minus,
    project_plus,
)

__version__ = "0.1.0"
