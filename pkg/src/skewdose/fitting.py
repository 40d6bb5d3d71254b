"""Parameter recovery for logistic and Gaussian-type curves.

Three knowledge regimes for the logistic asymptotes:

* both asymptotes known -- the transform
  ``Phi(y) = log(1/(y - l1) - 1/(l2 - l1))`` linearizes the curve exactly
  (``Phi(f(x)) = p - m x``), so (m, p) come from linear regression;
* lower asymptote known -- the steepest-secant midpoint approximates the
  inflection ordinate, giving ``l2 = 2 gamma_n - l1``, then the same
  transform applies;
* neither known -- the lower asymptote is the root of a scalar equation
  built from the steepest-secant data, and the remaining parameters
  follow from the exact inflection identities.

Dispersion and skewness curves ``v(d) = l + exp(-m d^2 + p d + q)`` are
fitted by quadratic least squares on ``log(v - l)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DomainError,
    NoBracket,
    NoFeasibleOffset,
    NonFinite,
    NonMonotoneAbscissae,
    NonMonotoneData,
    SingularDesign,
    TooFewPoints,
)
from .logistic import InflectionData, LogisticParams, evaluate, params_from_inflection

_EXP_MAX = 709.0
_SCAN_POINTS = 512
_BISECT_WIDTH = 1e-12


@dataclass(frozen=True)
class InflectionApprox:
    """Steepest-secant estimate of the inflection point.

    ``index`` is the 0-based left endpoint of the selected interval;
    ``theta_n`` / ``gamma_n`` are the interval midpoint abscissa and
    ordinate, ``delta_n`` the exact secant slope.
    """

    index: int
    theta_n: float
    gamma_n: float
    delta_n: float


@dataclass(frozen=True)
class GaussianTypeParams:
    """Bump curve v(d) = l + exp(-m d^2 + p d + q) with m > 0."""

    l: float
    m: float
    p: float
    q: float

    def __post_init__(self):
        for name in ("l", "m", "p", "q"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if not self.m > 0.0:
            raise DomainError(
                f"Gaussian-type curve needs m > 0, got m={self.m!r}")


def gaussian_type_value(params: GaussianTypeParams, d: float) -> float:
    """Evaluate l + exp(-m d^2 + p d + q)."""
    return params.l + math.exp(-params.m * d * d + params.p * d + params.q)


@dataclass(frozen=True)
class LinRegResult:
    """Estimates (m, p) from the decreasing line z = p - m x.

    ``slope_estimate`` is m (the negated raw regression slope),
    ``intercept_estimate`` is p.
    """

    slope_estimate: float
    intercept_estimate: float


@dataclass(frozen=True)
class FitReport:
    """Diagnostics attached to a logistic fit."""

    regime: str
    inflection: Optional[InflectionApprox]
    l1_equation_residual: Optional[float]
    sse: float


def phi_transform(y: float, l1: float, l2: float) -> float:
    """Linearizing transform log(1/(y - l1) - 1/(l2 - l1)).

    Defined strictly inside the band (l1, l2).  For the logistic with
    those asymptotes the transform is exactly the exponent:
    1/(f(x) - l1) - 1/(l2 - l1) = e^(m x + p), so the transformed values
    lie on the line m x + p.
    """
    if not (l1 < y < l2):
        raise DomainError(f"y={y!r} is outside the open band ({l1!r}, {l2!r})")
    arg = 1.0 / (y - l1) - 1.0 / (l2 - l1)
    if not arg > 0.0:
        raise DomainError(f"transform argument {arg!r} is not positive")
    return math.log(arg)


def linreg(xs: Sequence[float], zs: Sequence[float],
           centering: str = "n") -> LinRegResult:
    """Fit z = p - m x by least squares, in one of two centerings.

    ``centering="n"`` is ordinary least squares.  ``centering="n-1"``
    divides the centering terms by n - 1 instead:

        m = -( sum(x z) - sum(x) sum(z)/(n-1) )
            / ( sum(x^2) - sum(x)^2/(n-1) )
        p = ( sum(z) + m sum(x) ) / (n-1)

    The variants agree only asymptotically; the n-1 form is not
    consistent on finite noiseless samples and is kept so the
    finite-sample discrepancy stays measurable.
    """
    if centering not in ("n", "n-1"):
        raise ValueError(f"unknown centering {centering!r}")
    if len(xs) != len(zs):
        raise ValueError("xs and zs must have equal length")
    n = len(xs)
    if n < 2:
        raise SingularDesign(f"need at least 2 points, got {n}")
    if max(xs) == min(xs):
        raise SingularDesign("all abscissae are equal")
    k = float(n - 1) if centering == "n-1" else float(n)
    sx = math.fsum(xs)
    sz = math.fsum(zs)
    sxx = math.fsum(x * x for x in xs)
    sxz = math.fsum(x * z for x, z in zip(xs, zs))
    denom = sxx - sx * sx / k
    if denom == 0.0:
        raise SingularDesign("regression denominator vanishes")
    m_hat = -(sxz - sx * sz / k) / denom
    p_hat = (sz + m_hat * sx) / k
    return LinRegResult(slope_estimate=m_hat, intercept_estimate=p_hat)


def fit_known_limits(xs: Sequence[float], ys: Sequence[float],
                     l1: float, l2: float,
                     centering: str = "n") -> LogisticParams:
    """Fit (m, p) given both asymptotes, via the linearizing transform.

    Exact on noiseless logistic samples for any >= 2 distinct abscissae
    (the default OLS centering is consistent; ``centering="n-1"`` selects
    the alternative variant, which is not).
    """
    zs = [phi_transform(y, l1, l2) for y in ys]
    reg = linreg(xs, zs, centering=centering)
    # the transformed data lie on m x + p, so the decreasing-line slope
    # estimate carries the opposite sign of the logistic slope
    return LogisticParams(m=-reg.slope_estimate, p=reg.intercept_estimate,
                          l1=l1, l2=l2)


def detect_inflection(xs: Sequence[float], ys: Sequence[float]) -> InflectionApprox:
    """Locate the steepest secant; its midpoint approximates the inflection.

    Ties go to the smallest index so fits are reproducible.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    n = len(xs)
    if n < 2:
        raise TooFewPoints(f"need at least 2 points, got {n}")
    for i in range(n - 1):
        if not xs[i + 1] > xs[i]:
            raise NonMonotoneAbscissae(
                f"abscissae must be strictly increasing (violated at index {i + 1})")
    best = 0
    best_abs = -math.inf
    slopes = []
    for i in range(n - 1):
        s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
        slopes.append(s)
        if abs(s) > best_abs:
            best_abs = abs(s)
            best = i
    return InflectionApprox(
        index=best,
        theta_n=0.5 * (xs[best] + xs[best + 1]),
        gamma_n=0.5 * (ys[best] + ys[best + 1]),
        delta_n=slopes[best],
    )


def l1_equation_residual(l1_candidate: float, y1: float,
                         approx: InflectionApprox) -> float:
    """Residual of the discretized lower-asymptote equation.

        (gamma_n - y1)/(y1 - l1) + 1/2
            - exp(2 theta_n delta_n / (gamma_n - l1)) / 2

    Overflow of the exponential yields -inf, which still carries usable
    sign information for bracketing.
    """
    if not y1 > l1_candidate:
        raise DomainError(
            f"candidate l1={l1_candidate!r} must lie below y1={y1!r}")
    expo = 2.0 * approx.theta_n * approx.delta_n / (approx.gamma_n - l1_candidate)
    tail = -math.inf if expo > _EXP_MAX else -0.5 * math.exp(expo)
    return (approx.gamma_n - y1) / (y1 - l1_candidate) + 0.5 + tail


def _l1_equation_slope(l1_candidate: float, y1: float,
                       approx: InflectionApprox) -> float:
    expo = 2.0 * approx.theta_n * approx.delta_n / (approx.gamma_n - l1_candidate)
    if expo > _EXP_MAX:
        return math.inf
    return ((approx.gamma_n - y1) / (y1 - l1_candidate) ** 2
            - approx.theta_n * approx.delta_n * math.exp(expo)
            / (approx.gamma_n - l1_candidate) ** 2)


def solve_l1(y1: float, approx: InflectionApprox,
             bracket_lo: Optional[float] = None) -> float:
    """Solve the lower-asymptote equation for increasing data.

    Scans ``_SCAN_POINTS`` candidates on (bracket_lo, y1) for a sign
    change, bisects to interval width 1e-12, then applies one Newton
    polish step.  The default bracket reaches 10 midpoint gaps below y1.
    """
    if not y1 < approx.gamma_n:
        raise DomainError(
            f"increasing-data convention requires y1 < gamma_n "
            f"(y1={y1!r}, gamma_n={approx.gamma_n!r})")
    if bracket_lo is None:
        bracket_lo = y1 - 10.0 * (approx.gamma_n - y1)
    if not bracket_lo < y1:
        raise DomainError("bracket_lo must lie below y1")
    hi = y1 - 1e-9 * (y1 - bracket_lo)

    def resid(l):
        return l1_equation_residual(l, y1, approx)

    step = (hi - bracket_lo) / (_SCAN_POINTS - 1)
    grid = [bracket_lo + i * step for i in range(_SCAN_POINTS)]
    values = [resid(l) for l in grid]
    if all(math.isinf(v) or math.isnan(v) for v in values):
        raise NonFinite("residual is non-finite over the whole scan grid")

    a = b = None
    for i in range(_SCAN_POINTS - 1):
        va, vb = values[i], values[i + 1]
        if math.isnan(va) or math.isnan(vb):
            continue
        if va == 0.0:
            return grid[i]
        if (va < 0.0) != (vb < 0.0):
            a, b = grid[i], grid[i + 1]
            va_sign = va < 0.0
            break
    else:
        if values[-1] == 0.0:
            return grid[-1]
        raise NoBracket("no sign change on the scan grid")

    for _ in range(200):
        if b - a <= _BISECT_WIDTH:
            break
        mid = 0.5 * (a + b)
        vm = resid(mid)
        if vm == 0.0:
            a = b = mid
            break
        if (vm < 0.0) == va_sign:
            a = mid
        else:
            b = mid

    root = 0.5 * (a + b)
    slope = _l1_equation_slope(root, y1, approx)
    if math.isfinite(slope) and slope != 0.0:
        polished = root - resid(root) / slope
        if bracket_lo < polished < y1 and \
                abs(resid(polished)) <= abs(resid(root)):
            root = polished
    return root


def _strict_direction(ys: Sequence[float]) -> int:
    """+1 for strictly increasing, -1 for strictly decreasing, else raise."""
    increasing = all(b > a for a, b in zip(ys, ys[1:]))
    if increasing:
        return 1
    decreasing = all(b < a for a, b in zip(ys, ys[1:]))
    if decreasing:
        return -1
    raise NonMonotoneData(
        "the no-known-asymptote regime needs strictly monotone ordinates")


def fit_logistic(xs: Sequence[float], ys: Sequence[float],
                 regime: str = "none",
                 l1: Optional[float] = None, l2: Optional[float] = None,
                 centering: str = "n") -> tuple[LogisticParams, FitReport]:
    """Fit a logistic curve under one of three knowledge regimes.

    regime = "both"  -- l1 and l2 given; transform-and-regress.
    regime = "l1"    -- l1 given; l2 approximated as 2 gamma_n - l1,
                        then transform-and-regress.
    regime = "none"  -- lower asymptote solved from the steepest-secant
                        equation; remaining parameters from the exact
                        inflection identities.  Requires strictly
                        monotone ordinates; decreasing data are mirrored
                        through their midrange and mapped back.

    Abscissae must be strictly increasing.  They are shifted so the first
    one is 0 before fitting (the midpoint formulas assume it) and the
    offset parameter is mapped back afterward.

    Returns the parameters together with a :class:`FitReport` carrying
    the regime, the secant inflection estimate, the residual of the
    lower-asymptote equation at its root (regime "none" only) and the
    sum of squared curve residuals.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if len(xs) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(xs)}")
    for i in range(len(xs) - 1):
        if not xs[i + 1] > xs[i]:
            raise NonMonotoneAbscissae(
                f"abscissae must be strictly increasing (violated at index {i + 1})")

    x0 = xs[0]
    u = [x - x0 for x in xs]
    approx = detect_inflection(u, ys)
    eq_residual = None

    if regime == "both":
        if l1 is None or l2 is None:
            raise ValueError("regime 'both' requires l1 and l2")
        shifted = fit_known_limits(u, ys, l1, l2, centering=centering)
    elif regime == "l1":
        if l1 is None:
            raise ValueError("regime 'l1' requires l1")
        l2_n = 2.0 * approx.gamma_n - l1
        shifted = fit_known_limits(u, ys, l1, l2_n, centering=centering)
    elif regime == "none":
        direction = _strict_direction(ys)
        if direction > 0:
            shifted, eq_residual = _fit_increasing(u, ys, approx)
        else:
            mid2 = max(ys) + min(ys)
            mirrored = [mid2 - y for y in ys]
            fit, eq_residual = _fit_increasing(
                u, mirrored, detect_inflection(u, mirrored))
            shifted = LogisticParams(
                m=-fit.m,
                p=-fit.p - 2.0 * math.log(fit.l2 - fit.l1),
                l1=mid2 - fit.l2,
                l2=mid2 - fit.l1,
            )
    else:
        raise ValueError(f"unknown regime {regime!r}")

    # undo the abscissa shift: exponent m(x - x0) + p_s == m x + (p_s - m x0)
    params = LogisticParams(m=shifted.m, p=shifted.p - shifted.m * x0,
                            l1=shifted.l1, l2=shifted.l2)
    sse = math.fsum((evaluate(params, x) - y) ** 2 for x, y in zip(xs, ys))
    report = FitReport(regime=regime, inflection=approx,
                       l1_equation_residual=eq_residual, sse=sse)
    return params, report


def _fit_increasing(u: Sequence[float], ys: Sequence[float],
                    approx: InflectionApprox) -> tuple[LogisticParams, float]:
    l1_n = solve_l1(ys[0], approx)
    residual = abs(l1_equation_residual(l1_n, ys[0], approx))
    inflection = InflectionData(theta=approx.theta_n, f_theta=approx.gamma_n,
                                f_prime_theta=approx.delta_n)
    return params_from_inflection(l1_n, ys[0], inflection), residual


def _solve3(matrix: list[list[float]], rhs: list[float]) -> list[float]:
    """Solve a 3x3 system by Gaussian elimination with partial pivoting."""
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(3):
        pivot = max(range(col, 3), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0.0:
            raise SingularDesign("normal equations are singular")
        a[col], a[pivot] = a[pivot], a[col]
        for r in range(col + 1, 3):
            factor = a[r][col] / a[col][col]
            for c in range(col, 4):
                a[r][c] -= factor * a[col][c]
    x = [0.0, 0.0, 0.0]
    for row in range(2, -1, -1):
        acc = a[row][3] - sum(a[row][c] * x[c] for c in range(row + 1, 3))
        x[row] = acc / a[row][row]
    return x


def polyfit_quadratic(xs: Sequence[float],
                      ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares quadratic y = a x^2 + b x + c via normal equations.

    The 3x3 system is solved directly with partial pivoting.  Needs at
    least three distinct abscissae.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if len(set(xs)) < 3:
        raise SingularDesign(
            f"need at least 3 distinct abscissae, got {len(set(xs))}")
    s = [math.fsum(x ** k for x in xs) for k in range(5)]
    t = [math.fsum(y * x ** k for x, y in zip(xs, ys)) for k in range(3)]
    a, b, c = _solve3(
        [[s[4], s[3], s[2]],
         [s[3], s[2], s[1]],
         [s[2], s[1], s[0]]],
        [t[2], t[1], t[0]],
    )
    return a, b, c


def fit_gaussian_type(ds: Sequence[float], vs: Sequence[float],
                      offset: "float | str" = 0.0,
                      grid_lo: Optional[float] = None,
                      grid_hi: Optional[float] = None,
                      grid_steps: int = 256) -> GaussianTypeParams:
    """Fit v(d) = l + exp(-m d^2 + p d + q).

    ``offset`` is either a fixed l (the curve then log-linearizes, so the
    fit reduces to quadratic least squares on log(v - l)) or the string
    ``"grid"``: ``grid_steps`` uniform candidates strictly below min(vs)
    (or on an explicit [grid_lo, grid_hi]) are tried and the one with the
    smallest squared residual in original units wins.
    """
    if len(ds) != len(vs):
        raise ValueError("ds and vs must have equal length")

    if offset == "grid":
        lo_v = min(vs)
        span = max(vs) - lo_v
        if span <= 0.0:
            span = max(1.0, abs(lo_v))
        lo = grid_lo if grid_lo is not None else lo_v - span
        hi = grid_hi if grid_hi is not None else lo_v - 1e-6 * span
        if grid_steps < 1:
            raise ValueError("grid_steps must be >= 1")
        if grid_steps == 1:
            candidates = [lo]
        else:
            step = (hi - lo) / (grid_steps - 1)
            candidates = [lo + i * step for i in range(grid_steps)]
        best = None
        best_sse = math.inf
        for cand in candidates:
            if any(v - cand <= 0.0 for v in vs):
                continue
            try:
                a, b, c = polyfit_quadratic(ds, [math.log(v - cand) for v in vs])
            except SingularDesign:
                raise
            if a >= 0.0:
                continue  # would not decay; cannot be returned
            sse = math.fsum(
                (cand + math.exp(a * d * d + b * d + c) - v) ** 2
                for d, v in zip(ds, vs))
            if sse < best_sse:
                best_sse = sse
                best = (cand, a, b, c)
        if best is None:
            raise NoFeasibleOffset(
                "no candidate offset keeps all values positive above it "
                "and yields a decaying curve")
        cand, a, b, c = best
        return GaussianTypeParams(l=cand, m=-a, p=b, q=c)

    fixed = float(offset)
    if any(v - fixed <= 0.0 for v in vs):
        raise NoFeasibleOffset(
            f"some values are <= the fixed offset {fixed!r}")
    a, b, c = polyfit_quadratic(ds, [math.log(v - fixed) for v in vs])
    return GaussianTypeParams(l=fixed, m=-a, p=b, q=c)
