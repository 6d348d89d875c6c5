"""Continuous distribution families used as inputs to the maxima machinery.

A :class:`DistributionFamily` is an immutable bundle of vectorised
callables (pdf, cdf, survival, quantile and their log-space companions)
plus the two support endpoints.  Built-in constructors live at the bottom
of the module and are registered in :data:`FAMILIES` for configuration
lookup.

All public evaluation methods accept scalars or numpy arrays and mask
points outside the support, so user-supplied callables only ever see
points of the closed support ``[l(F), r(F)]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError, DomainError, PreconditionError
from .special import log1mexp

__all__ = [
    "Endpoint",
    "POS_INF",
    "NEG_INF",
    "DistributionFamily",
    "FAMILIES",
    "from_spec",
    "pareto",
    "reversed_power",
    "uniform",
    "exponential",
    "weibull_min",
    "frechet",
    "weibull_ev",
    "gumbel",
]

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Endpoint:
    """An extended real number: finite, ``+inf`` or ``-inf``."""

    kind: str
    value: float = 0.0

    def __post_init__(self):
        if self.kind not in ("finite", "+inf", "-inf"):
            raise ValueError(f"unknown endpoint kind {self.kind!r}")
        if self.kind == "finite" and not math.isfinite(self.value):
            raise ValueError("finite endpoint needs a finite value")

    @classmethod
    def finite(cls, value: float) -> "Endpoint":
        return cls("finite", float(value))

    @classmethod
    def of(cls, value: float) -> "Endpoint":
        value = float(value)
        if value == math.inf:
            return POS_INF
        if value == -math.inf:
            return NEG_INF
        return cls.finite(value)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __float__(self) -> float:
        if self.kind == "+inf":
            return math.inf
        if self.kind == "-inf":
            return -math.inf
        return self.value

    def __repr__(self) -> str:
        return self.kind if not self.is_finite else f"Endpoint({self.value!r})"


POS_INF = Endpoint("+inf")
NEG_INF = Endpoint("-inf")


def _scalar_or_array(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


@dataclass(frozen=True)
class DistributionFamily:
    """A continuous law ``F`` on ``[lower, upper]``.

    Only ``pdf``, ``cdf`` and ``quantile`` are mandatory.  Missing
    companions are derived (``survival = 1 - cdf``, logs by ``np.log``),
    which is correct but loses accuracy in the tails; built-ins supply
    closed forms for all of them.

    ``isf(q)`` is ``F^{<-}(1 - q)`` evaluated without forming ``1 - q``;
    ``tail_gap(q)`` is ``r(F) - isf(q)`` for finite right endpoints.
    ``aux`` optionally gives the Gumbel auxiliary function in closed form.
    ``log_pdf_gap`` / ``log_cdf_gap`` optionally give ``log f`` and
    ``log F`` at ``r(F) - g`` as functions of the gap ``g``, which keeps
    full precision where ``r - g`` rounds to ``r``.
    """

    name: str
    params: tuple
    lower: Endpoint
    upper: Endpoint
    pdf_fn: ArrayFn
    cdf_fn: ArrayFn
    quantile_fn: ArrayFn
    survival_fn: Optional[ArrayFn] = None
    log_pdf_fn: Optional[ArrayFn] = None
    log_cdf_fn: Optional[ArrayFn] = None
    log_survival_fn: Optional[ArrayFn] = None
    isf_fn: Optional[ArrayFn] = None
    tail_gap_fn: Optional[ArrayFn] = None
    aux_fn: Optional[ArrayFn] = field(default=None, compare=False)
    log_pdf_gap_fn: Optional[ArrayFn] = field(default=None, compare=False)
    log_cdf_gap_fn: Optional[ArrayFn] = field(default=None, compare=False)

    @property
    def l(self) -> float:
        return float(self.lower)

    @property
    def r(self) -> float:
        return float(self.upper)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({';'.join(format(p, 'g') for p in self.params)})"

    def _eval(self, fn, x, below, above, inside_fill=None):
        scalar = np.ndim(x) == 0
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape, dtype=float)
        lo_mask = x < self.l
        hi_mask = x > self.r
        inside = ~(lo_mask | hi_mask | np.isnan(x))
        out[lo_mask] = below
        out[hi_mask] = above
        out[np.isnan(x)] = np.nan
        if inside.any():
            with np.errstate(all="ignore"):
                out[inside] = fn(x[inside])
        if inside_fill is not None:
            # 0 * inf at a closed endpoint: take the outside value
            edge = inside & ((x == self.l) | (x == self.r)) & np.isnan(out)
            out[edge] = inside_fill
        return _scalar_or_array(out, scalar)

    # -- densities -------------------------------------------------------
    def pdf(self, x):
        return self._eval(self.pdf_fn, x, 0.0, 0.0, 0.0)

    def log_pdf(self, x):
        if self.log_pdf_fn is not None:
            return self._eval(self.log_pdf_fn, x, -math.inf, -math.inf, -math.inf)
        return self._eval(lambda t: np.log(self.pdf_fn(t)), x, -math.inf, -math.inf, -math.inf)

    # -- distribution functions ---------------------------------------------
    def cdf(self, x):
        return self._eval(self.cdf_fn, x, 0.0, 1.0)

    def survival(self, x):
        if self.survival_fn is not None:
            return self._eval(self.survival_fn, x, 1.0, 0.0)
        return self._eval(lambda t: 1.0 - self.cdf_fn(t), x, 1.0, 0.0)

    def log_cdf(self, x):
        """``log F(x)``; ``-inf`` where ``F(x) = 0``."""
        if self.log_cdf_fn is not None:
            return self._eval(self.log_cdf_fn, x, -math.inf, 0.0)
        if self.survival_fn is not None:
            return self._eval(lambda t: np.log1p(-self.survival_fn(t)), x, -math.inf, 0.0)
        return self._eval(lambda t: np.log(self.cdf_fn(t)), x, -math.inf, 0.0)

    def log_survival(self, x):
        if self.log_survival_fn is not None:
            return self._eval(self.log_survival_fn, x, 0.0, -math.inf)
        return self._eval(lambda t: np.log(self.survival(t)), x, 0.0, -math.inf)

    # -- inverses -------------------------------------------------------
    def quantile(self, p):
        """``F^{<-}(p)`` for ``0 < p < 1``."""
        scalar = np.ndim(p) == 0
        p = np.asarray(p, dtype=float)
        if np.any(~((p > 0.0) & (p < 1.0))):
            raise DomainError(f"quantile requires 0 < p < 1, got {p!r}")
        with np.errstate(all="ignore"):
            out = np.asarray(self.quantile_fn(p), dtype=float)
        return _scalar_or_array(out, scalar)

    def isf(self, q):
        """``F^{<-}(1 - q)`` for ``0 < q < 1``, accurate for small ``q``."""
        scalar = np.ndim(q) == 0
        q = np.asarray(q, dtype=float)
        if np.any(~((q > 0.0) & (q < 1.0))):
            raise DomainError(f"isf requires 0 < q < 1, got {q!r}")
        with np.errstate(all="ignore"):
            if self.isf_fn is not None:
                out = self.isf_fn(q)
            else:
                out = self.quantile_fn(1.0 - q)
        return _scalar_or_array(np.asarray(out, dtype=float), scalar)

    def tail_gap(self, q):
        """``r(F) - F^{<-}(1 - q)``; requires a finite right endpoint."""
        if not self.upper.is_finite:
            raise PreconditionError("tail_gap needs a finite right endpoint")
        if self.tail_gap_fn is None:
            return self.r - self.isf(q)
        scalar = np.ndim(q) == 0
        q = np.asarray(q, dtype=float)
        with np.errstate(all="ignore"):
            out = np.asarray(self.tail_gap_fn(q), dtype=float)
        return _scalar_or_array(out, scalar)

    @property
    def has_closed_isf(self) -> bool:
        return self.isf_fn is not None


# ---------------------------------------------------------------------------
# built-in families


def _positive(name, value):
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def pareto(alpha: float) -> DistributionFamily:
    """Pareto law ``F(x) = 1 - x^{-alpha}`` on ``x >= 1`` (Frechet domain)."""
    a = _positive("alpha", alpha)
    return DistributionFamily(
        name="pareto",
        params=(a,),
        lower=Endpoint.finite(1.0),
        upper=POS_INF,
        pdf_fn=lambda x: a * x ** (-a - 1.0),
        log_pdf_fn=lambda x: math.log(a) - (a + 1.0) * np.log(x),
        cdf_fn=lambda x: -np.expm1(-a * np.log(x)),
        survival_fn=lambda x: np.exp(-a * np.log(x)),
        log_cdf_fn=lambda x: log1mexp(a * np.log(x)),
        log_survival_fn=lambda x: -a * np.log(x),
        quantile_fn=lambda p: np.exp(-np.log1p(-p) / a),
        isf_fn=lambda q: np.exp(-np.log(q) / a),
    )


def reversed_power(alpha: float) -> DistributionFamily:
    """``F(x) = 1 - (1 - x)^alpha`` on ``[0, 1]`` (Weibull domain, r(F) = 1)."""
    a = _positive("alpha", alpha)
    return _reversed_power(a, "reversed_power", (a,))


def uniform() -> DistributionFamily:
    """Uniform(0, 1), the ``alpha = 1`` reversed power law."""
    return _reversed_power(1.0, "uniform", ())


def _reversed_power(a, name, params):
    return DistributionFamily(
        name=name,
        params=params,
        lower=Endpoint.finite(0.0),
        upper=Endpoint.finite(1.0),
        pdf_fn=lambda x: a * (1.0 - x) ** (a - 1.0),
        log_pdf_fn=lambda x: math.log(a) + (a - 1.0) * np.log1p(-x),
        cdf_fn=lambda x: -np.expm1(a * np.log1p(-x)),
        survival_fn=lambda x: np.exp(a * np.log1p(-x)),
        log_cdf_fn=lambda x: log1mexp(-a * np.log1p(-x)),
        log_survival_fn=lambda x: a * np.log1p(-x),
        quantile_fn=lambda p: -np.expm1(np.log1p(-p) / a),
        isf_fn=lambda q: -np.expm1(np.log(q) / a),
        tail_gap_fn=lambda q: np.exp(np.log(q) / a),
        log_pdf_gap_fn=lambda g: math.log(a) + (a - 1.0) * np.log(g),
        log_cdf_gap_fn=lambda g: log1mexp(-a * np.log(g)),
    )


def exponential(rate: float = 1.0) -> DistributionFamily:
    """Exponential law with the given rate (Gumbel domain)."""
    lam = _positive("rate", rate)
    return DistributionFamily(
        name="exponential",
        params=() if lam == 1.0 else (lam,),
        lower=Endpoint.finite(0.0),
        upper=POS_INF,
        pdf_fn=lambda x: lam * np.exp(-lam * x),
        log_pdf_fn=lambda x: math.log(lam) - lam * x,
        cdf_fn=lambda x: -np.expm1(-lam * x),
        survival_fn=lambda x: np.exp(-lam * x),
        log_cdf_fn=lambda x: log1mexp(lam * x),
        log_survival_fn=lambda x: -lam * x,
        quantile_fn=lambda p: -np.log1p(-p) / lam,
        isf_fn=lambda q: -np.log(q) / lam,
        aux_fn=lambda t: np.full(np.shape(t), 1.0 / lam),
    )


def weibull_min(k: float) -> DistributionFamily:
    """``F(x) = 1 - exp(-x^k)`` on ``x >= 0`` with ``k >= 1`` (Gumbel domain)."""
    k = _positive("k", k)
    if k < 1.0:
        raise DomainError(f"weibull_min requires k >= 1, got {k}")

    def log_pdf(x):
        # (k - 1) log x with 0 * log 0 taken as 0
        ll = np.where(x > 0, (k - 1.0) * np.log(np.where(x > 0, x, 1.0)), 0.0 if k == 1.0 else -np.inf)
        return math.log(k) + ll - x**k

    return DistributionFamily(
        name="weibull_min",
        params=(k,),
        lower=Endpoint.finite(0.0),
        upper=POS_INF,
        pdf_fn=lambda x: k * x ** (k - 1.0) * np.exp(-(x**k)),
        log_pdf_fn=log_pdf,
        cdf_fn=lambda x: -np.expm1(-(x**k)),
        survival_fn=lambda x: np.exp(-(x**k)),
        log_cdf_fn=lambda x: log1mexp(x**k),
        log_survival_fn=lambda x: -(x**k),
        quantile_fn=lambda p: (-np.log1p(-p)) ** (1.0 / k),
        isf_fn=lambda q: (-np.log(q)) ** (1.0 / k),
    )


def frechet(alpha: float) -> DistributionFamily:
    """The Frechet max-stable law ``exp(-x^{-alpha})`` on ``x > 0``."""
    a = _positive("alpha", alpha)
    return DistributionFamily(
        name="frechet",
        params=(a,),
        lower=Endpoint.finite(0.0),
        upper=POS_INF,
        pdf_fn=lambda x: a * x ** (-a - 1.0) * np.exp(-(x ** (-a))),
        log_pdf_fn=lambda x: math.log(a) - (a + 1.0) * np.log(x) - x ** (-a),
        cdf_fn=lambda x: np.exp(-(x ** (-a))),
        survival_fn=lambda x: -np.expm1(-(x ** (-a))),
        log_cdf_fn=lambda x: -(x ** (-a)),
        log_survival_fn=lambda x: log1mexp(x ** (-a)),
        quantile_fn=lambda p: (-np.log(p)) ** (-1.0 / a),
        isf_fn=lambda q: (-np.log1p(-q)) ** (-1.0 / a),
    )


def weibull_ev(alpha: float) -> DistributionFamily:
    """The Weibull max-stable law ``exp(-|x|^alpha)`` on ``x < 0``."""
    a = _positive("alpha", alpha)
    return DistributionFamily(
        name="weibull_ev",
        params=(a,),
        lower=NEG_INF,
        upper=Endpoint.finite(0.0),
        pdf_fn=lambda x: a * (-x) ** (a - 1.0) * np.exp(-((-x) ** a)),
        log_pdf_fn=lambda x: math.log(a) + (a - 1.0) * np.log(-x) - (-x) ** a,
        cdf_fn=lambda x: np.exp(-((-x) ** a)),
        survival_fn=lambda x: -np.expm1(-((-x) ** a)),
        log_cdf_fn=lambda x: -((-x) ** a),
        log_survival_fn=lambda x: log1mexp((-x) ** a),
        quantile_fn=lambda p: -((-np.log(p)) ** (1.0 / a)),
        isf_fn=lambda q: -((-np.log1p(-q)) ** (1.0 / a)),
        tail_gap_fn=lambda q: (-np.log1p(-q)) ** (1.0 / a),
        log_pdf_gap_fn=lambda g: math.log(a) + (a - 1.0) * np.log(g) - g ** a,
        log_cdf_gap_fn=lambda g: -(g ** a),
    )


def gumbel() -> DistributionFamily:
    """The Gumbel max-stable law ``exp(-exp(-x))`` on the real line."""
    return DistributionFamily(
        name="gumbel",
        params=(),
        lower=NEG_INF,
        upper=POS_INF,
        pdf_fn=lambda x: np.exp(-x - np.exp(-x)),
        log_pdf_fn=lambda x: -x - np.exp(-x),
        cdf_fn=lambda x: np.exp(-np.exp(-x)),
        survival_fn=lambda x: -np.expm1(-np.exp(-x)),
        log_cdf_fn=lambda x: -np.exp(-x),
        log_survival_fn=lambda x: log1mexp(np.exp(-x)),
        quantile_fn=lambda p: -np.log(-np.log(p)),
        isf_fn=lambda q: -np.log(-np.log1p(-q)),
    )


FAMILIES = {
    "pareto": (pareto, 1),
    "reversed_power": (reversed_power, 1),
    "uniform": (uniform, 0),
    "exponential": (exponential, (0, 1)),
    "weibull_min": (weibull_min, 1),
    "frechet": (frechet, 1),
    "weibull_ev": (weibull_ev, 1),
    "gumbel": (gumbel, 0),
}


def from_spec(name: str, params=()) -> DistributionFamily:
    """Build a registered family from its configuration name and parameters."""
    try:
        ctor, arity = FAMILIES[name]
    except KeyError:
        raise ConfigError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None
    params = list(params)
    allowed = arity if isinstance(arity, tuple) else (arity,)
    if len(params) not in allowed:
        raise ConfigError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    try:
        return ctor(*[float(p) for p in params])
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
