"""Skew-normal dose-effect modeling.

Fits a logistic mean curve and Gaussian-type dispersion/skewness curves
to per-dose trial summaries, converts them to per-dose skew-normal laws
for simulation, and reports optimal doses.
"""

from .dose_effect import (
    AssumptionReport,
    DoseEffectModel,
    DoseReport,
    OptimalDoseResult,
    check_assumptions,
    classify_sigma_shape,
    moments_at,
    optimal_dose,
    params_at,
    simulate,
)
from .errors import SkewDoseError
from .fitting import (
    FitReport,
    GaussianTypeParams,
    InflectionApprox,
    LinRegResult,
    detect_inflection,
    fit_gaussian_type,
    fit_known_limits,
    fit_logistic,
    gaussian_type_value,
    linreg,
    phi_transform,
    polyfit_quadratic,
    solve_l1,
)
from .logistic import InflectionData, LogisticParams
from .model_doc import parse_model, serialize_model
from .skew_normal import (
    GAMMA_MAX,
    MomentTriple,
    SkewNormalParams,
    estimate_moments,
    estimate_params,
    moments_of_params,
    params_of_moments,
)
from .special import erf, erfc
from .trial_io import DoseCohort, SummaryRow, parse_csv, summarize

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "DoseCohort",
    "DoseEffectModel",
    "DoseReport",
    "FitReport",
    "GAMMA_MAX",
    "GaussianTypeParams",
    "InflectionApprox",
    "InflectionData",
    "LinRegResult",
    "LogisticParams",
    "MomentTriple",
    "OptimalDoseResult",
    "SkewDoseError",
    "SkewNormalParams",
    "SummaryRow",
    "check_assumptions",
    "classify_sigma_shape",
    "detect_inflection",
    "erf",
    "erfc",
    "estimate_moments",
    "estimate_params",
    "fit_gaussian_type",
    "fit_known_limits",
    "fit_logistic",
    "gaussian_type_value",
    "linreg",
    "moments_at",
    "moments_of_params",
    "optimal_dose",
    "params_at",
    "params_of_moments",
    "parse_csv",
    "parse_model",
    "phi_transform",
    "polyfit_quadratic",
    "serialize_model",
    "simulate",
    "solve_l1",
    "summarize",
]
