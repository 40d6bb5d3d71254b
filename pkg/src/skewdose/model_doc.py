"""Flat key-value serialization of a fitted dose-effect model.

One ``key=value`` pair per line, floats at 17 significant digits (which
parses back to the identical double), so documents are diff-friendly,
language-neutral and round-trip bit for bit.
"""

from __future__ import annotations

from .dose_effect import DoseEffectModel
from .errors import ParseError
from .fitting import GaussianTypeParams
from .logistic import LogisticParams

_MU_KEYS = ("m", "p", "l1", "l2")
_GAUSSIAN_KEYS = ("l", "m", "p", "q")


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def serialize_model(model: DoseEffectModel) -> str:
    lines = [f"mu.{k}={_fmt(getattr(model.mu_curve, k))}" for k in _MU_KEYS]
    if isinstance(model.sigma_curve, LogisticParams):
        lines.append("sigma.family=logistic")
        lines += [f"sigma.{k}={_fmt(getattr(model.sigma_curve, k))}"
                  for k in _MU_KEYS]
    else:
        lines.append("sigma.family=gaussian_type")
        lines += [f"sigma.{k}={_fmt(getattr(model.sigma_curve, k))}"
                  for k in _GAUSSIAN_KEYS]
    lines += [f"gamma.{k}={_fmt(getattr(model.gamma_curve, k))}"
              for k in _GAUSSIAN_KEYS]
    lines.append(f"d0_hat={_fmt(model.d0_hat)}")
    return "\n".join(lines) + "\n"


def _parse_pairs(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for i, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped == "" or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParseError(i, f"expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


def _get_float(pairs: dict[str, str], key: str) -> float:
    if key not in pairs:
        raise ParseError(0, f"missing key {key!r}")
    try:
        return float(pairs[key])
    except ValueError:
        raise ParseError(0, f"key {key!r} has non-numeric value "
                            f"{pairs[key]!r}") from None


def parse_model(data: "str | bytes") -> DoseEffectModel:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    pairs = _parse_pairs(text)
    mu = LogisticParams(**{k: _get_float(pairs, f"mu.{k}") for k in _MU_KEYS})
    family = pairs.get("sigma.family")
    if family == "logistic":
        sigma = LogisticParams(
            **{k: _get_float(pairs, f"sigma.{k}") for k in _MU_KEYS})
    elif family == "gaussian_type":
        sigma = GaussianTypeParams(
            **{k: _get_float(pairs, f"sigma.{k}") for k in _GAUSSIAN_KEYS})
    else:
        raise ParseError(0, f"sigma.family must be 'logistic' or "
                            f"'gaussian_type', got {family!r}")
    gamma = GaussianTypeParams(
        **{k: _get_float(pairs, f"gamma.{k}") for k in _GAUSSIAN_KEYS})
    return DoseEffectModel(mu_curve=mu, sigma_curve=sigma, gamma_curve=gamma,
                           d0_hat=_get_float(pairs, "d0_hat"))
