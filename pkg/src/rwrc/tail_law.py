"""Marginal law of a single conductance.

The law on (0, inf) is fixed by its exact lower tail
``P(w <= x) = exp(-dcoef * x**-eta)``, so log-cdf, quantile, and density all
have closed forms.  Sampling is by inverse transform, one uniform per draw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentOutOfRange, NonPositiveArgument


@dataclass(frozen=True)
class TailLaw:
    eta: float
    dcoef: float

    def __post_init__(self):
        if not (np.isfinite(self.eta) and self.eta > 0):
            raise NonPositiveArgument(f"eta must be positive and finite, got {self.eta!r}")
        if not (np.isfinite(self.dcoef) and self.dcoef > 0):
            raise NonPositiveArgument(f"dcoef must be positive and finite, got {self.dcoef!r}")


def _require_positive(x, name: str):
    arr = np.asarray(x, dtype=float)
    if arr.size and not np.all(arr > 0):
        raise NonPositiveArgument(f"{name} must be strictly positive")
    return arr


def log_cdf(law: TailLaw, x):
    """Exact log lower tail, -dcoef * x**-eta."""
    arr = _require_positive(x, "x")
    # x**-eta saturates to inf for tiny x; -inf is the correct limit
    with np.errstate(over="ignore"):
        out = -law.dcoef * arr ** (-law.eta)
    return out if arr.ndim else float(out)


def cdf(law: TailLaw, x):
    arr = _require_positive(x, "x")
    with np.errstate(over="ignore"):
        out = np.exp(-law.dcoef * arr ** (-law.eta))
    return out if arr.ndim else float(out)


def quantile(law: TailLaw, u):
    """Inverse cdf on (0, 1)."""
    arr = np.asarray(u, dtype=float)
    if arr.size and not (np.all(arr > 0) and np.all(arr < 1)):
        raise ArgumentOutOfRange("u must lie strictly between 0 and 1")
    out = (law.dcoef / (-np.log(arr))) ** (1.0 / law.eta)
    return out if arr.ndim else float(out)


def log_density(law: TailLaw, x):
    arr = _require_positive(x, "x")
    with np.errstate(over="ignore"):
        out = (
            np.log(law.dcoef * law.eta)
            - (law.eta + 1.0) * np.log(arr)
            - law.dcoef * arr ** (-law.eta)
        )
    return out if arr.ndim else float(out)


def sample(law: TailLaw, rng: np.random.Generator, n: int) -> np.ndarray:
    """n independent draws by inverse transform, one uniform each."""
    if n < 0:
        raise ArgumentOutOfRange(f"sample count must be nonnegative, got {n}")
    u = rng.random(int(n))
    # rng.random can return exactly 0, which the quantile rejects
    u = np.where(u > 0.0, u, np.nextafter(0.0, 1.0))
    return np.asarray(quantile(law, u), dtype=float).reshape(-1)
