"""Density of the normalized maximum ``(M_n - b_n) / a_n``.

``g_n(x) = n a f(a x + b) F(a x + b)**(n-1)`` is only ever evaluated in
log-space: at ``n = 1e5`` the power ``F**(n-1)`` underflows over a range
of ``x`` where ``g_n**beta`` still carries visible mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import POS_INF, DistributionFamily, Endpoint
from .entropy import EntropyResult, renyi_entropy_numeric, shannon_entropy_numeric
from .errors import DivergenceError, DomainError, PreconditionError
from .norming import NormingConstants, norming_constants
from .quadrature import integrate_adaptive

__all__ = [
    "NormalizedMaximaDensity",
    "normalized_maxima",
    "moment_of_normalized_max",
    "weibull_to_frechet",
]


@dataclass(frozen=True)
class NormalizedMaximaDensity:
    family: DistributionFamily
    constants: NormingConstants

    @property
    def n(self) -> int:
        return self.constants.n

    @property
    def support(self):
        """Open interval ``{x : l(F) < a x + b < r(F)}``."""
        a, b = self.constants.a, self.constants.b
        return ((self.family.l - b) / a, (self.family.r - b) / a)

    def _arg(self, x):
        return self.constants.a * np.asarray(x, dtype=float) + self.constants.b

    def _uses_gap(self):
        F = self.family
        return (F.log_pdf_gap_fn is not None and F.log_cdf_gap_fn is not None
                and self.constants.b == F.r)

    def _gap_eval(self, fn, x, fill_at_r):
        # evaluate at r - g with g = -a x formed exactly, not via a x + b
        F = self.family
        g = -self.constants.a * np.asarray(x, dtype=float)
        inside = (g > 0.0) & (g < F.r - F.l)
        out = np.full(g.shape, -np.inf)
        out[g <= 0.0] = fill_at_r
        with np.errstate(all="ignore"):
            out[inside] = fn(g[inside])
        return out

    def log_density(self, x):
        """``log g_n(x)``; ``-inf`` outside the support."""
        scalar = np.ndim(x) == 0
        n, a = self.n, self.constants.a
        if self._uses_gap():
            log_f = self._gap_eval(self.family.log_pdf_gap_fn, x, -np.inf)
            log_F = self._gap_eval(self.family.log_cdf_gap_fn, x, 0.0)
        else:
            y = self._arg(x)
            log_f = np.asarray(self.family.log_pdf(y), dtype=float)
            log_F = np.asarray(self.family.log_cdf(y), dtype=float) if n > 1 else 0.0
        out = math.log(n) + math.log(a) + log_f
        if n > 1:
            out = out + (n - 1) * log_F
        out = np.where(np.isnan(out), -np.inf, out)
        return float(out) if scalar else out

    def pdf(self, x):
        with np.errstate(under="ignore"):
            return np.exp(self.log_density(x))

    def log_cdf(self, x):
        """``log F^n(a x + b)``, the log distribution function of the normalized maximum."""
        scalar = np.ndim(x) == 0
        if self._uses_gap():
            out = self.n * self._gap_eval(self.family.log_cdf_gap_fn, x, 0.0)
        else:
            out = self.n * np.asarray(self.family.log_cdf(self._arg(x)), dtype=float)
        return float(out) if scalar else out

    def integrate(self, log_integrand, rel_tol=1e-10, **kw):
        """Quadrature of ``exp(log_integrand(x))`` over the support."""
        kw.setdefault("center", 0.0)
        kw.setdefault("scale", 1.0)
        return integrate_adaptive(log_integrand, self.support, rel_tol, log_integrand=True, **kw)

    def renyi_entropy(self, beta, rel_tol=1e-10) -> EntropyResult:
        return renyi_entropy_numeric(self.log_density, self.support, beta, rel_tol)

    def shannon_entropy(self, rel_tol=1e-10) -> float:
        return shannon_entropy_numeric(self.log_density, self.support, rel_tol)


def normalized_maxima(F: DistributionFamily, domain, n: int, *, numeric: bool = False) -> NormalizedMaximaDensity:
    """Shortcut: norming constants for ``(F, domain, n)`` wrapped into ``g_n``."""
    return NormalizedMaximaDensity(F, norming_constants(F, domain, n, numeric=numeric))


def moment_of_normalized_max(D: NormalizedMaximaDensity, k: int, tol: float = 1e-10, alpha=None) -> float:
    """``∫ x**k g_n(x) dx`` by quadrature, split at 0 into signed halves.

    ``alpha`` (the Frechet tail index, if known) turns ``k >= alpha`` into
    an immediate :class:`PreconditionError`; otherwise an infinite moment
    surfaces as :class:`DivergenceError` from the quadrature.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"moment order must be a positive integer, got {k!r}")
    k = int(k)
    if alpha is not None and k >= alpha:
        raise PreconditionError(f"moment of order {k} is infinite for tail index {alpha}")
    lo, hi = D.support

    def log_abs(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            out = k * np.log(np.abs(x)) + D.log_density(x)
        # inf * 0 at an infinite node of the tail map
        return np.where(np.isnan(out), -np.inf, out)

    total = 0.0
    try:
        if hi > 0.0:
            part = integrate_adaptive(log_abs, (max(lo, 0.0), hi), tol, log_integrand=True)
            total += part.value
        if lo < 0.0:
            part = integrate_adaptive(log_abs, (lo, min(hi, 0.0)), tol, log_integrand=True)
            total += part.value if k % 2 == 0 else -part.value
    except DivergenceError as exc:
        raise DivergenceError(f"moment of order {k} diverges: {exc}") from exc
    return total


def weibull_to_frechet(FY: DistributionFamily) -> DistributionFamily:
    """Law of ``X = 1 / (r - Y)`` for ``Y ~ FY`` with finite ``r = r(FY)``.

    ``F_X(x) = F_Y(r - 1/x)`` on ``x > 0``.  Its Frechet scale constant at
    ``n`` is ``1 / delta_n`` of ``FY``.
    """
    if not FY.upper.is_finite:
        raise PreconditionError("weibull_to_frechet needs a finite right endpoint")
    r = FY.r
    lower = Endpoint.finite(1.0 / (r - FY.l)) if FY.lower.is_finite else Endpoint.finite(0.0)

    def back(x):
        return r - 1.0 / x

    return DistributionFamily(
        name=f"inv_gap[{FY.label}]",
        params=(),
        lower=lower,
        upper=POS_INF,
        pdf_fn=lambda x: FY.pdf(back(x)) / (x * x),
        cdf_fn=lambda x: FY.cdf(back(x)),
        quantile_fn=lambda p: 1.0 / (r - FY.quantile(p)),
        survival_fn=lambda x: FY.survival(back(x)),
        log_pdf_fn=lambda x: FY.log_pdf(back(x)) - 2.0 * np.log(x),
        log_cdf_fn=lambda x: FY.log_cdf(back(x)),
        log_survival_fn=lambda x: FY.log_survival(back(x)),
        isf_fn=lambda q: 1.0 / FY.tail_gap(q),
    )

