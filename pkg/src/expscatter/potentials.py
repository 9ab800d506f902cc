"""Catalog of 1-D potentials the solver knows how to scatter off.

Each model is a frozen value object; ``evaluate`` returns V(x) and
``classify`` reports how the potential behaves toward x -> -inf and
x -> +inf, which decides the matching strategy (plane waves on a
vanishing side, exact-basis projection on a diverging side).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError


class AsymptoticClass(enum.Enum):
    VANISHING = "vanishing"
    DIVERGING = "diverging"


@dataclass(frozen=True)
class PotentialModel:
    """A potential from the catalog.

    kind is one of "exponential", "shifted_exponential", "rectangular",
    "free"; unused parameters stay None.
    """

    kind: str
    v0: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    half_width: Optional[float] = None


def exponential(v0: float, a: float) -> PotentialModel:
    """V(x) = -v0 * exp(x/a): vanishes to the left, dives to -inf on the right.

    Args:
        v0: depth scale, must be > 0.
        a: range, must be > 0.
    """
    _require_positive("v0", v0)
    _require_positive("a", a)
    return PotentialModel(kind="exponential", v0=float(v0), a=float(a))


def shifted_exponential(v0: float, a: float, b: float) -> PotentialModel:
    """V(x) = -v0 * exp((x-b)/a), the exponential model translated by b.

    Identical to exponential(v0 * exp(-b/a), a); the shift only relabels
    the origin, observables cannot depend on it.
    """
    _require_positive("v0", v0)
    _require_positive("a", a)
    if not math.isfinite(b):
        raise DomainError(f"shift b must be finite, got {b!r}")
    return PotentialModel(kind="shifted_exponential", v0=float(v0), a=float(a), b=float(b))


def rectangular(v0: float, half_width: float) -> PotentialModel:
    """V(x) = v0 for |x| <= half_width, else 0.

    Args:
        v0: signed height; > 0 is a barrier, < 0 a well.
        half_width: must be > 0.
    """
    if not math.isfinite(v0):
        raise DomainError(f"v0 must be finite, got {v0!r}")
    _require_positive("half_width", half_width)
    return PotentialModel(kind="rectangular", v0=float(v0), half_width=float(half_width))


def free() -> PotentialModel:
    """V(x) = 0 everywhere."""
    return PotentialModel(kind="free")


def evaluate(model: PotentialModel, x):
    """V(x) for a scalar or ndarray x.

    Exponential kinds saturate to -inf once exp overflows; the solver
    treats non-finite values as out of domain.
    """
    if model.kind == "exponential":
        return -model.v0 * _safe_exp(np.asarray(x, dtype=float) / model.a)
    if model.kind == "shifted_exponential":
        return -model.v0 * _safe_exp((np.asarray(x, dtype=float) - model.b) / model.a)
    if model.kind == "rectangular":
        xarr = np.asarray(x, dtype=float)
        v = np.where(np.abs(xarr) <= model.half_width, model.v0, 0.0)
        return v if v.ndim else float(v)
    if model.kind == "free":
        xarr = np.asarray(x, dtype=float)
        return np.zeros_like(xarr) if xarr.ndim else 0.0
    raise DomainError(f"unknown potential kind {model.kind!r}")


def classify(model: PotentialModel) -> tuple[AsymptoticClass, AsymptoticClass]:
    """(left, right) asymptotic behavior of the model."""
    if model.kind in ("exponential", "shifted_exponential"):
        return (AsymptoticClass.VANISHING, AsymptoticClass.DIVERGING)
    if model.kind in ("rectangular", "free"):
        return (AsymptoticClass.VANISHING, AsymptoticClass.VANISHING)
    raise DomainError(f"unknown potential kind {model.kind!r}")


def effective_exponential(model: PotentialModel) -> tuple[float, float]:
    """Collapse an exponential-family model to unshifted (v0_eff, a).

    shifted_exponential(v0, a, b) == exponential(v0 * exp(-b/a), a).
    """
    if model.kind == "exponential":
        return model.v0, model.a
    if model.kind == "shifted_exponential":
        return model.v0 * math.exp(-model.b / model.a), model.a
    raise DomainError(f"{model.kind!r} is not in the exponential family")


def _safe_exp(arg):
    arr = np.asarray(arg, dtype=float)
    with np.errstate(over="ignore"):
        out = np.exp(arr)
    return out if out.ndim else float(out)


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
