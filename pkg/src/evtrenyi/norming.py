"""Norming constants ``a_n, b_n`` for each max domain of attraction.

Recipes, with ``q = 1/n`` and ``F^{<-}(1 - q)`` the upper quantile:

* Frechet: ``a_n = F^{<-}(1 - 1/n)``, ``b_n = 0``;
* Weibull: ``a_n = r(F) - F^{<-}(1 - 1/n)``, ``b_n = r(F)``;
* Gumbel:  ``b_n = F^{<-}(1 - 1/n)``, ``a_n = u(b_n)`` with ``u`` the
  auxiliary function ``∫_t^{r(F)} (1 - F(s)) ds / (1 - F(t))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distributions import DistributionFamily
from .errors import DegenerateTailError, DomainError, NoConvergenceError, PreconditionError
from .quadrature import integrate_adaptive

__all__ = [
    "Domain",
    "NormingConstants",
    "bracketed_root",
    "solve_quantile",
    "solve_tail_quantile",
    "auxiliary_function",
    "norming_constants",
]

MAX_EXPANSIONS = 200


class Domain(str, Enum):
    FRECHET = "frechet"
    WEIBULL = "weibull"
    GUMBEL = "gumbel"


@dataclass(frozen=True)
class NormingConstants:
    """``a`` is the scale (``a_n`` or ``delta_n``), ``b`` the shift."""

    n: int
    a: float
    b: float
    domain: Domain

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not self.a > 0.0:
            raise DomainError(f"scale constant must be positive, got {self.a!r}")


def bracketed_root(g, lo, hi, tol, max_iter=400):
    """Root of an increasing function ``g`` on ``[lo, hi]`` with ``g(lo) <= 0 <= g(hi)``.

    Regula falsi steps, with a forced bisection whenever a step fails to
    halve the bracket.  Returns ``x`` with ``|g(x)| <= tol``, or the best
    endpoint once the bracket reaches machine resolution.
    """
    glo, ghi = g(lo), g(hi)
    if glo > 0 or ghi < 0:
        raise ValueError("root is not bracketed")
    if abs(glo) <= tol:
        return lo
    if abs(ghi) <= tol:
        return hi
    bisect = False
    for _ in range(max_iter):
        width = hi - lo
        x = lo + 0.5 * width
        if not bisect and ghi != glo and math.isfinite(ghi - glo):
            xs = lo - glo * width / (ghi - glo)
            if lo < xs < hi:
                x = xs
        if not lo < x < hi:
            break
        gx = g(x)
        if abs(gx) <= tol:
            return x
        if gx < 0:
            lo, glo = x, gx
        else:
            hi, ghi = x, gx
        bisect = (hi - lo) > 0.5 * width
    if hi - lo <= 4 * np.spacing(max(abs(lo), abs(hi))):
        return lo if abs(glo) <= abs(ghi) else hi
    raise NoConvergenceError(f"root finder stalled at [{lo!r}, {hi!r}]")


def _bracket(F: DistributionFamily, below):
    """Find ``lo <= hi`` in the support with ``below(lo)`` true and ``below(hi)`` false.

    Expands geometrically from an interior seed toward ``r(F)``, or toward
    ``l(F)`` when the seed already overshoots.
    """
    l, r = F.l, F.r
    if math.isfinite(l) and math.isfinite(r):
        return l, r
    seed = l if math.isfinite(l) else (r if math.isfinite(r) else 0.0)
    step = max(1.0, abs(seed))
    lo = hi = seed
    if below(seed):
        if math.isfinite(r):
            return lo, r
        for _ in range(MAX_EXPANSIONS):
            lo, hi = hi, seed + step
            step *= 2.0
            if not below(hi):
                return lo, hi
    else:
        if math.isfinite(l):
            return l, hi
        for _ in range(MAX_EXPANSIONS):
            hi, lo = lo, seed - step
            step *= 2.0
            if below(lo):
                return lo, hi
    raise NoConvergenceError(f"no bracket found within {MAX_EXPANSIONS} expansions")


def solve_quantile(F: DistributionFamily, p: float, tol: float = 1e-12) -> float:
    """Numerical ``F^{<-}(p)`` with ``|F(x) - p| <= tol`` (bracketed secant/bisection)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    lo, hi = _bracket(F, lambda x: F.cdf(x) < p)
    x = bracketed_root(lambda x: F.cdf(x) - p, lo, hi, tol)
    # |F(x) - p| <= tol leaves x loose where f is small; polish with Newton
    gx = float(F.cdf(x)) - p
    for _ in range(3):
        fx = float(F.pdf(x))
        if gx == 0.0 or not (fx > 0.0 and math.isfinite(fx)):
            break
        y = x - gx / fx
        gy = float(F.cdf(y)) - p
        if not (lo <= y <= hi) or abs(gy) > abs(gx):
            break
        x, gx = y, gy
    return x


def solve_tail_quantile(F: DistributionFamily, q: float, rtol: float = 1e-12) -> float:
    """Numerical ``F^{<-}(1 - q)`` solving ``log(1 - F(x)) = log q`` to ``rtol``."""
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q!r}")
    logq = math.log(q)
    lo, hi = _bracket(F, lambda x: F.log_survival(x) > logq)
    return bracketed_root(lambda x: logq - F.log_survival(x), lo, hi, rtol)


def auxiliary_function(F: DistributionFamily, t: float, tol: float = 1e-10) -> float:
    """``u(t) = ∫_t^{r(F)} (1 - F(s)) ds / (1 - F(t))`` by adaptive quadrature.

    Raises :class:`DegenerateTailError` when the survival at ``t`` is 0.
    """
    t = float(t)
    if not t < F.r:
        raise PreconditionError(f"auxiliary function needs t < r(F) = {F.r}, got {t}")
    if F.aux_fn is not None and t >= F.l:
        return float(F.aux_fn(np.asarray(t)))
    log_sf_t = float(F.log_survival(t))
    if log_sf_t == -math.inf:
        raise DegenerateTailError(f"survival function underflows at t = {t!r}")
    lo = max(t, F.l)
    head = 0.0
    if t < F.l:
        head = (F.l - t) / math.exp(log_sf_t)
    # von Mises scale (1 - F)/f seeds the breakpoint grid
    lpdf = float(F.log_pdf(lo))
    guess = math.exp(float(F.log_survival(lo)) - lpdf) if math.isfinite(lpdf) else 1.0
    scale = guess if math.isfinite(guess) and guess > 0 else 1.0
    if math.isfinite(F.r):
        scale = min(scale, 0.5 * (F.r - lo))
    res = integrate_adaptive(
        lambda s: F.log_survival(s) - log_sf_t,
        (lo, F.r), tol, log_integrand=True, center=lo, scale=scale,
    )
    return head + res.value


def norming_constants(F: DistributionFamily, domain, n: int, *, numeric: bool = False) -> NormingConstants:
    """Norming constants for ``F`` in the given domain of attraction.

    Closed-form upper quantiles (and auxiliary functions) are used when the
    family declares them, unless ``numeric=True`` forces the root-finding
    and quadrature path.
    """
    domain = Domain(domain)
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if domain is Domain.FRECHET and math.isfinite(F.r):
        raise PreconditionError("Frechet domain requires r(F) = +inf")
    if domain is Domain.WEIBULL and not math.isfinite(F.r):
        raise PreconditionError("Weibull domain requires a finite r(F)")

    if n == 1:
        # F^{<-}(0) is the left endpoint
        if domain is Domain.WEIBULL:
            upper_q = F.l
        else:
            upper_q = F.l if math.isfinite(F.l) else None
        if upper_q is None:
            raise PreconditionError("n = 1 needs a finite left endpoint")
    q = 1.0 / n

    def upper_quantile():
        if n == 1:
            return upper_q
        if F.has_closed_isf and not numeric:
            return float(F.isf(q))
        return solve_tail_quantile(F, q)

    if domain is Domain.FRECHET:
        return NormingConstants(n, upper_quantile(), 0.0, domain)
    if domain is Domain.WEIBULL:
        if n > 1 and F.tail_gap_fn is not None and not numeric:
            gap = float(F.tail_gap(q))
        else:
            gap = F.r - upper_quantile()
        return NormingConstants(n, gap, F.r, domain)
    b = upper_quantile()
    if numeric and F.aux_fn is not None:
        numeric_family = _without_aux(F)
        a = auxiliary_function(numeric_family, b)
    else:
        a = auxiliary_function(F, b)
    return NormingConstants(n, a, b, domain)


def _without_aux(F):
    from dataclasses import replace

    return replace(F, aux_fn=None)
