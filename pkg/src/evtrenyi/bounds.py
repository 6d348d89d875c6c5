"""Grid predicates for the tail, Potter, auxiliary-ratio and envelope bounds.

Each checker evaluates an inequality on an explicit grid, at an explicit
``n`` and explicit epsilons, and returns a :class:`BoundReport`.  None of
them certify a statement "for all sufficiently large n"; they report what
holds on the grid.  Comparisons are made in log-space where both sides
can underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .distributions import DistributionFamily
from .errors import DegenerateTailError, DomainError, PreconditionError
from .maxima import NormalizedMaximaDensity
from .norming import Domain, auxiliary_function, norming_constants

__all__ = [
    "BoundReport",
    "potter_bound_holds",
    "gumbel_tail_bound_holds",
    "auxiliary_ratio_bound_holds",
    "EnvelopeKind",
    "EnvelopeSpec",
    "envelope_dominates",
    "default_grid",
    "GRID_POINTS",
]

GRID_POINTS = 33


@dataclass(frozen=True)
class BoundReport:
    """``violations`` holds ``(point, lhs, bound)`` tuples, ``skipped`` ``(point, reason)``."""

    holds: bool
    checked: int
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_dict(self):
        return {
            "holds": self.holds,
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "skipped": [list(s) for s in self.skipped],
        }


def _report(checked, violations, skipped=()):
    return BoundReport(not violations, checked, list(violations), list(skipped))


def _require_eps(eps):
    eps = float(eps)
    if not eps > 0.0:
        raise DomainError(f"epsilon must be positive, got {eps!r}")
    return eps


# -- Potter -----------------------------------------------------------------


def potter_bound_holds(U, rho, eps, t0, xs, ts) -> BoundReport:
    """``(1-eps) x**(rho-eps) < U(tx)/U(t) < (1+eps) x**(rho+eps)`` on ``xs x ts``.

    ``U`` is a positive callable; ``xs`` must lie in ``[1, inf)`` and ``ts``
    in ``[t0, inf)``.  Both inequalities are strict.
    """
    eps = _require_eps(eps)
    xs = [float(x) for x in xs]
    ts = [float(t) for t in ts]
    if any(x < 1.0 for x in xs):
        raise PreconditionError("Potter grid needs x >= 1")
    if any(t < t0 for t in ts):
        raise PreconditionError(f"Potter grid needs t >= t0 = {t0}")
    violations = []
    for t in ts:
        ut = float(U(t))
        for x in xs:
            ratio = float(U(t * x)) / ut
            lower = (1.0 - eps) * x ** (rho - eps)
            upper = (1.0 + eps) * x ** (rho + eps)
            if not lower < ratio < upper:
                violations.append(((t, x), ratio, (lower, upper)))
    return _report(len(xs) * len(ts), violations)


# -- Gumbel tail --------------------------------------------------------------


def gumbel_tail_bound_holds(F: DistributionFamily, n: int, eps, xs) -> BoundReport:
    """``n (1 - F(a_n x + b_n))`` against ``(1+eps)**2 (1 -+ eps |x|)**(1/eps)``.

    The minus sign applies for ``x >= 0`` (which then needs ``eps x < 1``),
    the plus sign for ``x < 0``.
    """
    eps = _require_eps(eps)
    xs = [float(x) for x in xs]
    if any(x >= 0.0 and eps * x >= 1.0 for x in xs):
        raise PreconditionError("tail bound for x >= 0 needs eps * x < 1")
    c = norming_constants(F, Domain.GUMBEL, n)
    log_n = math.log(n)
    violations = []
    for x in xs:
        lhs = log_n + float(F.log_survival(c.a * x + c.b))
        inner = 1.0 - eps * x if x >= 0.0 else 1.0 + eps * abs(x)
        rhs = 2.0 * math.log1p(eps) + math.log(inner) / eps
        if lhs > rhs:
            violations.append((x, math.exp(lhs), math.exp(rhs)))
    return _report(len(xs), violations)


# -- auxiliary ratio ----------------------------------------------------------


def _log_neg_log_cdf(F, y):
    """``log(-log F(y))`` accurate when the survival is tiny."""
    lsf = float(F.log_survival(y))
    sf = math.exp(lsf)
    if sf < 1e-8:
        return lsf + 0.5 * sf
    return math.log(-float(F.log_cdf(y)))


def auxiliary_ratio_bound_holds(F: DistributionFamily, t, eps, xs) -> BoundReport:
    """Two-sided bounds on ``u(t + x u(t)) / u(t)``.

    With ``R = (-log F(t)) / (-log F(t + x u(t)))`` for ``x >= 0`` and its
    reciprocal for ``x < 0`` (so ``R >= 1`` in both branches), check
    ``(1-eps) R**(-eps) <= ratio <= (1+eps) R**eps``.  Shifted points
    outside the support, or with zero survival, are skipped.
    """
    eps = _require_eps(eps)
    t = float(t)
    if not F.l < t < F.r:
        raise PreconditionError(f"t = {t} is not inside the support")
    ut = auxiliary_function(F, t)
    ln_t = _log_neg_log_cdf(F, t)
    violations, skipped = [], []
    checked = 0
    for x in (float(v) for v in xs):
        s = t + x * ut
        if not F.l < s < F.r:
            skipped.append((x, "shifted point outside the support"))
            continue
        try:
            us = auxiliary_function(F, s)
        except DegenerateTailError:
            skipped.append((x, "survival underflows at the shifted point"))
            continue
        ln_s = _log_neg_log_cdf(F, s)
        log_r = ln_t - ln_s if x >= 0.0 else ln_s - ln_t
        ratio = us / ut
        lower = (1.0 - eps) * math.exp(-eps * log_r)
        upper = (1.0 + eps) * math.exp(eps * log_r)
        checked += 1
        if not lower <= ratio <= upper:
            violations.append((x, ratio, (lower, upper)))
    return _report(checked, violations, skipped)


# -- envelopes ----------------------------------------------------------------


class EnvelopeKind(str, Enum):
    FRECHET_H = "frechet"
    GUMBEL_H1 = "gumbel_h1"
    GUMBEL_H2 = "gumbel_h2"


@dataclass(frozen=True)
class EnvelopeSpec:
    """Dominating function for ``g_n`` built from explicit epsilons.

    FrechetH: ``prefactor * x**(-alpha'-1) * exp(-scale * x**(-alpha'))``
    with ``alpha' = alpha - eps2``, ``prefactor = (alpha+eps1)/(1-eps2)`` and
    ``scale = (1-eps3)/(1-eps2)``.  The single constant ``c`` of the compact
    form ``c alpha' x**(-alpha'-1) exp(-c x**(-alpha'))`` would have to play
    both roles, so both are kept.

    GumbelH1 (``x < 0``): ``c1 (1 + eps4 |x|)**c2 exp(-c3 (1 + eps4 |x|)**(1/eps4))``.
    GumbelH2 (``0 < x < 1/eps4``): the same with ``1 - eps4 x`` and the
    ``1 - eps2`` variants of ``c1, c2``.
    """

    kind: EnvelopeKind
    epsilons: tuple
    constants: dict

    @classmethod
    def frechet(cls, alpha, eps1, eps2, eps3):
        eps = tuple(_require_eps(e) for e in (eps1, eps2, eps3))
        e1, e2, e3 = eps
        if not e2 < alpha or not e2 < 1.0 or not e3 < 1.0:
            raise DomainError("FrechetH needs eps2 < min(alpha, 1) and eps3 < 1")
        consts = {
            "alpha": float(alpha),
            "alpha_prime": alpha - e2,
            "prefactor": (alpha + e1) / (1.0 - e2),
            "scale": (1.0 - e3) / (1.0 - e2),
        }
        return cls(EnvelopeKind.FRECHET_H, eps, consts)

    @classmethod
    def _gumbel(cls, kind, eps, sign):
        eps = tuple(_require_eps(e) for e in eps)
        if len(eps) != 5:
            raise DomainError("Gumbel envelopes take five epsilons")
        e1, e2, e3, e4, e5 = eps
        if not (e2 < 1.0 and e3 < 1.0 and e5 < 1.0):
            raise DomainError("Gumbel envelopes need eps2, eps3, eps5 < 1")
        p = 1.0 + sign * e2
        c1 = (1.0 + e1) * (1.0 + e4) ** (2.0 * p / e4) / ((1.0 - e2) * (1.0 - e5) ** p)
        consts = {"c1": c1, "c2": p / e4, "c3": (1.0 - e3) * (1.0 + e4) ** 2}
        return cls(kind, eps, consts)

    @classmethod
    def gumbel_h1(cls, eps1, eps2, eps3, eps4, eps5):
        return cls._gumbel(EnvelopeKind.GUMBEL_H1, (eps1, eps2, eps3, eps4, eps5), +1.0)

    @classmethod
    def gumbel_h2(cls, eps1, eps2, eps3, eps4, eps5):
        if not eps4 > eps2:
            raise DomainError("GumbelH2 needs eps4 > eps2")
        return cls._gumbel(EnvelopeKind.GUMBEL_H2, (eps1, eps2, eps3, eps4, eps5), -1.0)

    @property
    def domain(self) -> Domain:
        return Domain.FRECHET if self.kind is EnvelopeKind.FRECHET_H else Domain.GUMBEL

    @property
    def region(self):
        if self.kind is EnvelopeKind.FRECHET_H:
            return (0.0, 1.0)
        if self.kind is EnvelopeKind.GUMBEL_H1:
            return (-math.inf, 0.0)
        return (0.0, 1.0 / self.epsilons[3])

    def log_value(self, x):
        """Log of the envelope; ``-inf`` outside its region."""
        x = np.asarray(x, dtype=float)
        k = self.constants
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.kind is EnvelopeKind.FRECHET_H:
                ap = k["alpha_prime"]
                xp = np.where(x > 0, x, 1.0)
                out = math.log(k["prefactor"]) - (ap + 1.0) * np.log(xp) - k["scale"] * xp ** (-ap)
                return np.where(x > 0, out, -np.inf)
            e4 = self.epsilons[3]
            if self.kind is EnvelopeKind.GUMBEL_H1:
                w = np.where(x < 0, 1.0 + e4 * np.abs(x), 1.0)
                ok = x < 0
            else:
                w = np.where((x > 0) & (e4 * x < 1.0), 1.0 - e4 * x, 1.0)
                ok = (x > 0) & (e4 * x < 1.0)
            out = math.log(k["c1"]) + k["c2"] * np.log(w) - k["c3"] * w ** (1.0 / e4)
            return np.where(ok, out, -np.inf)

    def value(self, x):
        return np.exp(self.log_value(x))


def default_grid(spec: EnvelopeSpec, points: int = GRID_POINTS):
    """``points`` geometrically spaced abscissae in the envelope's region."""
    if spec.kind is EnvelopeKind.FRECHET_H:
        return np.geomspace(1e-2, 1.0, points)
    if spec.kind is EnvelopeKind.GUMBEL_H1:
        return -np.geomspace(1e-2, 10.0, points)
    return np.geomspace(1e-2, 0.99 / spec.epsilons[3], points)


def envelope_dominates(D: NormalizedMaximaDensity, E: EnvelopeSpec, xs=None) -> BoundReport:
    """``g_n(x) <= envelope(x)`` at every grid point (log-space comparison)."""
    if D.constants.domain is not E.domain:
        raise PreconditionError(f"{E.kind.value} envelope does not apply to the {D.constants.domain.value} domain")
    xs = default_grid(E) if xs is None else np.asarray(xs, dtype=float)
    lo, hi = E.region
    if E.kind is EnvelopeKind.FRECHET_H:
        outside = [x for x in xs if not lo < x <= hi]
    else:
        outside = [x for x in xs if not lo < x < hi]
    if outside:
        raise PreconditionError(f"grid points {outside} lie outside the envelope region {E.region}")
    lg = np.atleast_1d(D.log_density(xs))
    lh = np.atleast_1d(E.log_value(xs))
    violations = [
        (float(x), float(np.exp(g)), float(np.exp(h)))
        for x, g, h in zip(xs, lg, lh) if g > h
    ]
    return _report(len(xs), violations)
