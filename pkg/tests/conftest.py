"""Shared fixtures: the bundled rodent-trial summaries and two models.

``REFERENCE_*`` constants freeze the known-good fit of the bundled
dataset at 4-digit precision; the acceptance suite checks the pipeline
reproduces them within stated tolerances.
"""

import pytest

from skewdose.dose_effect import DoseEffectModel, classify_sigma_shape
from skewdose.fitting import GaussianTypeParams, fit_gaussian_type, fit_logistic
from skewdose.logistic import LogisticParams

# escape-time summaries: 8 animals per dose, effect in seconds
TRIAL_DOSES = (0.0, 0.75, 1.5, 3.0)
TRIAL_MEANS = (33.3875, 44.1625, 51.5, 78.225)
TRIAL_SDS = (26.9715, 30.8113, 44.6582, 31.9657)
TRIAL_SKEWS = (-0.0276, -0.1381, 1.2827, 0.3504)

# reference fit, rounded to the precision it is usually quoted at
REFERENCE_L1 = 21.8153
REFERENCE_INV_WIDTH = 0.0116
REFERENCE_M = -0.8278
REFERENCE_P = -2.5929
REFERENCE_SIGMA_COEFFS = (-0.1502, 0.5289, 3.2459)   # a, b, c on log sd
REFERENCE_GAMMA = GaussianTypeParams(l=0.2381, m=0.6503, p=2.2935, q=-1.5578)


@pytest.fixture(scope="session")
def trial_data():
    return TRIAL_DOSES, TRIAL_MEANS, TRIAL_SDS, TRIAL_SKEWS


@pytest.fixture(scope="session")
def fitted_model():
    """Model produced by the full pipeline from the trial summaries."""
    mu_curve, _ = fit_logistic(TRIAL_DOSES, TRIAL_MEANS, regime="none")
    _, d0_hat = classify_sigma_shape(TRIAL_DOSES, TRIAL_SDS)
    sigma_curve = fit_gaussian_type(TRIAL_DOSES, TRIAL_SDS, offset=0.0)
    gamma_curve = fit_gaussian_type(TRIAL_DOSES, TRIAL_SKEWS, offset="grid")
    return DoseEffectModel(mu_curve=mu_curve, sigma_curve=sigma_curve,
                           gamma_curve=gamma_curve, d0_hat=d0_hat)


@pytest.fixture(scope="session")
def reference_model():
    """Model assembled from the rounded reference constants."""
    a, b, c = REFERENCE_SIGMA_COEFFS
    return DoseEffectModel(
        mu_curve=LogisticParams(
            m=REFERENCE_M, p=REFERENCE_P, l1=REFERENCE_L1,
            l2=REFERENCE_L1 + 1.0 / REFERENCE_INV_WIDTH),
        sigma_curve=GaussianTypeParams(l=0.0, m=-a, p=b, q=c),
        gamma_curve=REFERENCE_GAMMA,
        d0_hat=1.5,
    )
