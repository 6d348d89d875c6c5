"""Special functions needed by the closed-form entropies and moments.

Only real, positive arguments are supported.  ``log_gamma`` uses upward
recurrence into the region ``x >= 10`` followed by the Stirling series
with eight Bernoulli terms, which is accurate to a few units in the last
place there.
"""

import math

from .errors import DomainError

__all__ = ["log_gamma", "gamma", "euler_mascheroni", "log1mexp"]

_HALF_LOG_2PI = 0.91893853320467274178032973640562

# B_{2k} / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_RECURRENCE_FLOOR = 10.0

_EULER_GAMMA = 0.57721566490153286060651209008240243


def _stirling(x):
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series * inv


def log_gamma(x: float) -> float:
    """Natural logarithm of the gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0.0 or math.isnan(x):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    if x == 1.0 or x == 2.0:
        return 0.0
    if x >= _RECURRENCE_FLOOR:
        return _stirling(x)
    shift = 1.0
    z = x
    while z < _RECURRENCE_FLOOR:
        shift *= z
        z += 1.0
    return _stirling(z) - math.log(shift)


def gamma(x: float) -> float:
    """Gamma function for positive real ``x``."""
    return math.exp(log_gamma(x))


def euler_mascheroni() -> float:
    """The Euler-Mascheroni constant, so that Gamma'(1) = -gamma."""
    return _EULER_GAMMA


def log1mexp(t):
    """Compute ``log(1 - exp(-t))`` for ``t >= 0`` without cancellation.

    Works on scalars and numpy arrays.  Uses ``log(-expm1(-t))`` for small
    ``t`` and ``log1p(-exp(-t))`` otherwise (Maechler's split at log 2).
    """
    import numpy as np

    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            t <= math.log(2.0),
            np.log(-np.expm1(-t)),
            np.log1p(-np.exp(-t)),
        )
    return out[()] if out.ndim == 0 else out
