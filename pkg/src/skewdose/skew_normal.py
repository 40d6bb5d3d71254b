"""Skew-normal distribution and its moment parameterization.

The family is parameterized by location ``xi``, scale ``omega > 0`` and
shape ``alpha``; ``alpha = 0`` recovers the normal law.  Density:

    f(x) = exp(-(x - xi)^2 / (2 omega^2)) / (omega sqrt(2 pi))
           * [1 + erf(alpha (x - xi) / (omega sqrt(2)))]

With ``delta = alpha / sqrt(1 + alpha^2)`` the first three moments are

    mean     mu    = xi + omega delta sqrt(2/pi)
    variance sigma^2 = omega^2 (1 - 2 delta^2 / pi)
    skewness gamma = ((4 - pi)/2) (delta sqrt(2/pi))^3
                     / (1 - 2 delta^2/pi)^(3/2)

and the map inverts in closed form, which is how both the plug-in sample
estimators and the per-dose simulation parameters are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateSample, DomainError, InfeasibleSkewness
from .quadrature import integrate
from .special import erfc

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

#: Supremum of |skewness| over the whole family (attained as alpha -> inf).
GAMMA_MAX = ((4.0 - math.pi) / 2.0) * _SQRT_2_OVER_PI ** 3 \
    / (1.0 - 2.0 / math.pi) ** 1.5

#: Skewness magnitudes at or above this are clamped when clamping is on.
#: Strictly inside the feasible bound, so the clamped value always inverts.
CLAMP_LIMIT = 0.995

# integration window half-width, in units of omega; the mass outside
# xi +- 13.5 omega is ~1e-41, far below the 1e-10 cdf tolerance
_CDF_SPAN = 13.5


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SkewNormalParams:
    """Location / scale / shape triple of the skew-normal family."""

    xi: float
    omega: float
    alpha: float

    def __post_init__(self):
        for name in ("xi", "omega", "alpha"):
            _require_finite(name, getattr(self, name))
        if self.omega <= 0.0:
            raise DomainError(f"omega must be > 0, got {self.omega!r}")

    @property
    def delta(self) -> float:
        """Shape reparameterization alpha / sqrt(1 + alpha^2), in (-1, 1)."""
        return self.alpha / math.hypot(1.0, self.alpha)


@dataclass(frozen=True)
class MomentTriple:
    """Mean, standard deviation and Pearson skewness.

    Any finite skewness is representable (sample skewness routinely
    exceeds the family bound); feasibility for the skew-normal family,
    ``abs(gamma) < GAMMA_MAX``, is only enforced when converting to
    distribution parameters.
    """

    mu: float
    sigma: float
    gamma: float

    def __post_init__(self):
        for name in ("mu", "sigma", "gamma"):
            _require_finite(name, getattr(self, name))
        if self.sigma <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma!r}")

    @property
    def feasible(self) -> bool:
        return abs(self.gamma) < GAMMA_MAX


def pdf(params: SkewNormalParams, x: float) -> float:
    """Density at x.  Nonnegative; reduces to the normal for alpha = 0.

    The bracket 1 + erf(t) is evaluated as erfc(-t) so that strong tail
    suppression yields a tiny positive number instead of rounding to zero.
    """
    z = (x - params.xi) / params.omega
    bracket = erfc(-params.alpha * z / math.sqrt(2.0))
    return math.exp(-0.5 * z * z) / (params.omega * _SQRT_2PI) * bracket


def cdf(params: SkewNormalParams, x: float, tol: float = 1e-10) -> float:
    """Distribution function by adaptive quadrature of the density.

    Accurate to the quadrature tolerance; clamped into [0, 1].
    """
    lo = params.xi - _CDF_SPAN * params.omega
    hi = params.xi + _CDF_SPAN * params.omega
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    mass = integrate(lambda u: pdf(params, u), lo, x, tol=tol)
    return min(1.0, max(0.0, mass))


def moments_of_params(params: SkewNormalParams) -> MomentTriple:
    """Closed-form (mean, sd, skewness) of the given parameters."""
    delta = params.delta
    mu_z = delta * _SQRT_2_OVER_PI
    var_z = 1.0 - 2.0 * delta * delta / math.pi
    gamma = (4.0 - math.pi) / 2.0 * mu_z ** 3 / var_z ** 1.5
    return MomentTriple(
        mu=params.xi + params.omega * mu_z,
        sigma=params.omega * math.sqrt(var_z),
        gamma=gamma,
    )


def clamp_skewness(gamma: float) -> tuple[float, bool]:
    """Clamp a skewness into the feasible range.

    Returns ``(possibly_clamped_value, was_clamped)``.  Values with
    ``abs(gamma) >= CLAMP_LIMIT`` map to ``+-CLAMP_LIMIT``.
    """
    if abs(gamma) >= CLAMP_LIMIT:
        return math.copysign(CLAMP_LIMIT, gamma), True
    return gamma, False


def params_of_moments(moments: MomentTriple, clamp: bool = True) -> SkewNormalParams:
    """Invert (mean, sd, skewness) to (location, scale, shape).

    With ``clamp=True`` (the default) skewness magnitudes >= CLAMP_LIMIT
    are pulled back to the boundary so the inversion is total; use
    :func:`clamp_skewness` to learn whether that happened.  With
    ``clamp=False`` an infeasible skewness raises
    :class:`~skewdose.errors.InfeasibleSkewness`.
    """
    gamma = moments.gamma
    if clamp:
        gamma, _ = clamp_skewness(gamma)
    elif abs(gamma) >= GAMMA_MAX:
        raise InfeasibleSkewness(
            f"|gamma| = {abs(gamma):.6g} is not attainable "
            f"(bound {GAMMA_MAX:.6f})")

    g = abs(gamma)
    abs_delta = (g ** (1.0 / 3.0) * math.sqrt(math.pi / 2.0)
                 / math.sqrt(g ** (2.0 / 3.0)
                             + ((4.0 - math.pi) / 2.0) ** (2.0 / 3.0)))
    delta = math.copysign(abs_delta, gamma)
    alpha = delta / math.sqrt(1.0 - delta * delta)
    omega = moments.sigma / math.sqrt(1.0 - 2.0 * delta * delta / math.pi)
    xi = moments.mu - omega * delta * _SQRT_2_OVER_PI
    return SkewNormalParams(xi=xi, omega=omega, alpha=alpha)


def estimate_moments(sample_values: Sequence[float]) -> MomentTriple:
    """Plug-in moment estimates with 1/n normalization throughout.

    Mean, standard deviation (population form, no Bessel correction) and
    skewness as the average cubed standardized deviation.
    """
    arr = np.asarray(sample_values, dtype=float)
    n = arr.size
    if n < 2:
        raise DegenerateSample(f"need at least 2 observations, got {n}")
    mean = float(arr.mean())
    centered = arr - mean
    var = float((centered * centered).mean())
    if var <= 0.0:
        raise DegenerateSample("all observations are equal")
    sd = math.sqrt(var)
    z = centered / sd
    # plain products keep (-a)^3 == -(a^3) exactly, so symmetric samples
    # report skewness 0 and hence shape 0 (the cube root would amplify
    # one-ulp noise into a visible shape estimate)
    skew = float((z * z * z).mean())
    return MomentTriple(mu=mean, sigma=sd, gamma=skew)


def estimate_params(sample_values: Sequence[float],
                    clamp: bool = True) -> SkewNormalParams:
    """Plug-in (location, scale, shape) estimates: moments, then inversion."""
    return params_of_moments(estimate_moments(sample_values), clamp=clamp)


def sample(params: SkewNormalParams, n: int, seed: int) -> np.ndarray:
    """Draw n variates, reproducibly for a fixed seed.

    Uses the two-normal representation
    ``X = xi + omega (delta |Z0| + sqrt(1 - delta^2) Z1)``
    with independent standard normals Z0, Z1.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    z0 = rng.standard_normal(n)
    z1 = rng.standard_normal(n)
    delta = params.delta
    mix = delta * np.abs(z0) + math.sqrt(1.0 - delta * delta) * z1
    return params.xi + params.omega * mix
