"""The three max-stable laws: densities, closed-form Rényi entropies, moments."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import distributions
from .entropy import renyi_order
from .errors import DivergenceError, DomainError, PreconditionError
from .special import euler_mascheroni, gamma, log_gamma

__all__ = [
    "LawKind",
    "MaxStableLaw",
    "ev_pdf",
    "ev_cdf",
    "limit_renyi_entropy",
    "limit_moment",
]


class LawKind(str, Enum):
    FRECHET = "frechet"
    WEIBULL_EV = "weibull_ev"
    GUMBEL = "gumbel"


@dataclass(frozen=True)
class MaxStableLaw:
    """Frechet(alpha), Weibull(alpha) (support x < 0) or Gumbel."""

    kind: LawKind
    alpha: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", LawKind(self.kind))
        if self.kind is LawKind.GUMBEL:
            object.__setattr__(self, "alpha", None)
            return
        if self.alpha is None or not float(self.alpha) > 0.0 or not math.isfinite(float(self.alpha)):
            raise DomainError(f"{self.kind.value} law needs alpha > 0, got {self.alpha!r}")
        object.__setattr__(self, "alpha", float(self.alpha))

    @classmethod
    def frechet(cls, alpha):
        return cls(LawKind.FRECHET, alpha)

    @classmethod
    def weibull(cls, alpha):
        return cls(LawKind.WEIBULL_EV, alpha)

    @classmethod
    def gumbel(cls):
        return cls(LawKind.GUMBEL)

    @property
    def label(self) -> str:
        if self.kind is LawKind.GUMBEL:
            return "gumbel"
        return f"{self.kind.value}({self.alpha:g})"

    def as_family(self) -> distributions.DistributionFamily:
        if self.kind is LawKind.FRECHET:
            return distributions.frechet(self.alpha)
        if self.kind is LawKind.WEIBULL_EV:
            return distributions.weibull_ev(self.alpha)
        return distributions.gumbel()

    @property
    def support(self):
        if self.kind is LawKind.FRECHET:
            return (0.0, math.inf)
        if self.kind is LawKind.WEIBULL_EV:
            return (-math.inf, 0.0)
        return (-math.inf, math.inf)

    def log_pdf(self, x):
        return self.as_family().log_pdf(x)

    def pdf(self, x):
        return ev_pdf(self, x)

    def cdf(self, x):
        return ev_cdf(self, x)


def ev_pdf(G: MaxStableLaw, x):
    """Density of the max-stable law; 0 outside its open support."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    a = G.alpha
    with np.errstate(all="ignore"):
        if G.kind is LawKind.FRECHET:
            xp = np.where(x > 0, x, 1.0)
            out = np.where(x > 0, a * xp ** (-a - 1.0) * np.exp(-(xp ** (-a))), 0.0)
        elif G.kind is LawKind.WEIBULL_EV:
            xn = np.where(x < 0, -x, 1.0)
            out = np.where(x < 0, a * xn ** (a - 1.0) * np.exp(-(xn**a)), 0.0)
        else:
            out = np.exp(-x - np.exp(-x))
    return float(out) if scalar else out


def ev_cdf(G: MaxStableLaw, x):
    """Distribution function of the max-stable law."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    a = G.alpha
    with np.errstate(all="ignore"):
        if G.kind is LawKind.FRECHET:
            xp = np.where(x > 0, x, 1.0)
            out = np.where(x > 0, np.exp(-(xp ** (-a))), 0.0)
        elif G.kind is LawKind.WEIBULL_EV:
            xn = np.where(x < 0, -x, 0.0)
            out = np.where(x < 0, np.exp(-(xn**a)), 1.0)
        else:
            out = np.exp(-np.exp(-x))
    return float(out) if scalar else out


def limit_renyi_entropy(G: MaxStableLaw, beta) -> float:
    """Closed-form Rényi entropy of order ``beta`` of a max-stable law.

    Frechet needs ``1/(alpha+1) < beta``; Weibull needs
    ``max(0, (beta-1)/beta) < alpha``; Gumbel any ``beta > 0``.  Outside
    these ranges the defining integral diverges and
    :class:`DivergenceError` is raised.
    """
    beta = renyi_order(beta)
    a = G.alpha
    if G.kind is LawKind.GUMBEL:
        return (log_gamma(beta) - beta * math.log(beta)) / (1.0 - beta)
    if G.kind is LawKind.FRECHET:
        if not 1.0 / (a + 1.0) < beta:
            raise DivergenceError(
                f"Frechet({a:g}) entropy diverges: requires 1/(alpha+1) < beta, "
                f"got 1/(alpha+1) = {1.0 / (a + 1.0):g} >= beta = {beta:g}"
            )
        shape = (a + 1.0) / a
    else:
        bound = max(0.0, (beta - 1.0) / beta)
        if not bound < a:
            raise DivergenceError(
                f"Weibull({a:g}) entropy diverges: requires max(0, (beta-1)/beta) < alpha, "
                f"got max(0, (beta-1)/beta) = {bound:g} >= alpha = {a:g}"
            )
        shape = (a - 1.0) / a
    return (
        -math.log(a)
        + shape * math.log(beta)
        - (math.log(beta) - log_gamma(shape * (beta - 1.0) + 1.0)) / (1.0 - beta)
    )


def limit_moment(G: MaxStableLaw, k: int) -> float:
    """k-th moment of the max-stable law.

    Frechet: ``Gamma(1 - k/alpha)`` for ``k < alpha``; Weibull:
    ``(-1)^k Gamma(1 + k/alpha)``; Gumbel: ``(-1)^k Gamma^{(k)}(1)`` for
    ``k`` in {1, 2}.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"moment order must be a positive integer, got {k!r}")
    k = int(k)
    if G.kind is LawKind.FRECHET:
        if k >= G.alpha:
            raise PreconditionError(f"Frechet({G.alpha:g}) has no finite moment of order {k} (needs k < alpha)")
        return gamma(1.0 - k / G.alpha)
    if G.kind is LawKind.WEIBULL_EV:
        return (-1) ** k * gamma(1.0 + k / G.alpha)
    g = euler_mascheroni()
    if k == 1:
        return g
    if k == 2:
        return g * g + math.pi**2 / 6.0
    raise PreconditionError(f"Gumbel moments are supported for k <= 2, got k = {k}")
