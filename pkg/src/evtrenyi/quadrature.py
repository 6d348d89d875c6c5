"""Globally adaptive Gauss-Kronrod (7/15) quadrature on finite or infinite intervals.

The interval is cut at geometric breakpoints ``center +- scale * 2**k``
so that integrands living on scale ~``scale`` around ``center`` are never
missed by the initial rule.  Infinite pieces are mapped onto ``(0, 1]``
with the rational substitution ``x = c + s (1/v - 1)``.

Refinement proceeds in rounds: each round bisects the smallest set of
worst subintervals whose error, if removed, would meet the tolerance.
The running integral is tracked per round; three consecutive rounds each
growing it by more than 10% are reported as divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, IntegrandError, NoConvergenceError

__all__ = ["QuadratureResult", "integrate_adaptive", "geometric_breakpoints"]

# Kronrod nodes on [0, 1] (symmetric), QUADPACK qk15
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[:3][::-1]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny
LOG_FLOOR = -745.0
DIVERGENCE_GROWTH = 0.10
DIVERGENCE_ROUNDS = 3
DEFAULT_MAX_EVALS = 1_000_000
# tail parameter v below which x = c + s (1/v - 1) is beyond 1e100 * s
EDGE_V = 1e-100
EDGE_BANDS = (1e-200, 1e-100)
EDGE_FLAT_RATIO = 0.95

_FINITE, _UPPER_TAIL, _LOWER_TAIL = 0, 1, 2


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def geometric_breakpoints(lo, hi, center=0.0, scale=1.0, kmin=-4, kmax=30):
    """Points ``center +- scale * 2**k`` (and ``center``) strictly inside ``(lo, hi)``.

    A center outside the interval is moved to the nearest endpoint.
    """
    if center <= lo:
        center = lo
    elif center >= hi:
        center = hi
    steps = scale * np.ldexp(1.0, np.arange(kmin, kmax + 1))
    pts = np.concatenate([[center], center + steps, center - steps])
    pts = pts[(pts > lo) & (pts < hi)]
    return np.unique(pts)


class _Segments:
    """Parameter intervals ``[ta, tb]`` with a map back to ``x``."""

    def __init__(self, lo, hi, points):
        knots = [lo, *points, hi]
        ta, tb, kind, c, s = [], [], [], [], []
        for a, b in zip(knots[:-1], knots[1:]):
            if math.isinf(a) and math.isinf(b):
                raise ValueError("doubly infinite piece needs a breakpoint")
            if math.isinf(b):
                ta.append(0.0); tb.append(1.0); kind.append(_UPPER_TAIL)
                c.append(a); s.append(max(1.0, abs(a)))
            elif math.isinf(a):
                ta.append(0.0); tb.append(1.0); kind.append(_LOWER_TAIL)
                c.append(b); s.append(max(1.0, abs(b)))
            else:
                ta.append(a); tb.append(b); kind.append(_FINITE)
                c.append(0.0); s.append(1.0)
        self.ta = np.array(ta)
        self.tb = np.array(tb)
        self.kind = np.array(kind)
        self.c = np.array(c)
        self.s = np.array(s)


def _rule(f, log_integrand, ta, tb, kind, c, s):
    half = 0.5 * (tb - ta)
    mid = 0.5 * (ta + tb)
    t = mid[:, None] + half[:, None] * NODES[None, :]
    kk = kind[:, None]
    cc = c[:, None]
    ss = s[:, None]
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        inv = 1.0 / t - 1.0
        x = np.where(kk == _FINITE, t, np.where(kk == _UPPER_TAIL, cc + ss * inv, cc - ss * inv))
        if log_integrand:
            logjac = np.where(kk == _FINITE, 0.0, np.log(ss) - 2.0 * np.log(t))
            raw = np.asarray(f(x), dtype=float)
            if raw.shape != x.shape:
                raw = np.broadcast_to(raw, x.shape)
            if np.isnan(raw).any() or (raw == np.inf).any():
                raise IntegrandError("log-integrand returned NaN or +inf")
            total = raw + logjac
            vals = np.where(total < LOG_FLOOR, 0.0, np.exp(total))
        else:
            raw = np.asarray(f(x), dtype=float)
            if raw.shape != x.shape:
                raw = np.broadcast_to(raw, x.shape)
            if not np.isfinite(raw).all():
                raise IntegrandError("integrand returned a non-finite value")
            jac = np.where(kk == _FINITE, 1.0, ss / (t * t))
            vals = np.where(raw == 0.0, 0.0, raw * jac)
    if not np.isfinite(vals).all():
        raise DivergenceError("integrand overflow after substitution")
    resk = vals @ KRONROD_WEIGHTS
    resg = vals @ GAUSS_WEIGHTS
    mean = 0.5 * resk
    resabs = np.abs(vals) @ KRONROD_WEIGHTS
    resasc = np.abs(vals - mean[:, None]) @ KRONROD_WEIGHTS
    hl = np.abs(half)
    value = resk * half
    err = np.abs((resk - resg) * half)
    resasc = resasc * hl
    resabs = resabs * hl
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    err = np.where(resabs > _TINY / (50.0 * _EPS), np.maximum(50.0 * _EPS * resabs, err), err)
    return value, err


def _check_edge_mass(ta, tb, kind, val, target, total):
    """Refuse results whose infinite-tail mass sits near the float range limit.

    Mass per decade of ``v`` that stays flat means a tail no faster than
    ``1/x`` (divergent); a slowly shrinking one means a tail too heavy to
    truncate at the largest float.
    """
    tail = kind != _FINITE
    edge = tail & (tb <= EDGE_V)
    if not edge.any():
        return
    mass = float(np.sum(np.abs(val[edge])))
    if mass <= target:
        return
    lo_band, hi_band = EDGE_BANDS
    outer = float(np.sum(np.abs(val[tail & (tb <= lo_band)])))
    inner = float(np.sum(np.abs(val[tail & (tb > lo_band) & (tb <= hi_band)])))
    if inner > 0.0 and outer >= EDGE_FLAT_RATIO * inner:
        raise DivergenceError(
            f"tail mass does not decay with |x| (value {total:.6g}, mass beyond 1e100: {mass:.3g})"
        )
    raise NoConvergenceError(
        f"tail too heavy for the float range (value {total:.6g}, mass beyond 1e100: {mass:.3g})"
    )


def integrate_adaptive(
    f,
    interval,
    rel_tol: float = 1e-10,
    *,
    abs_tol: float = 0.0,
    log_integrand: bool = False,
    breakpoints=None,
    center: float = 0.0,
    scale: float = 1.0,
    max_evals: int = DEFAULT_MAX_EVALS,
) -> QuadratureResult:
    """Integrate ``f`` over ``interval = (lo, hi)``; endpoints may be infinite.

    Parameters
    ----------
    f : callable
        Vectorised integrand.  With ``log_integrand=True`` it returns the
        logarithm of the integrand; points below ``LOG_FLOOR`` count as 0.
    rel_tol, abs_tol : float
        Stop when the summed error estimate is below
        ``max(abs_tol, rel_tol * |value|)``.
    breakpoints : sequence of float, optional
        Explicit cut points; by default :func:`geometric_breakpoints`
        around ``center`` with the given ``scale``.
    max_evals : int
        Budget of integrand evaluations.

    Raises
    ------
    NoConvergenceError
        Budget exhausted or subintervals cannot be split further.
    DivergenceError
        Three successive refinement rounds each grew the value by > 10%,
        or the value overflowed.
    IntegrandError
        The integrand produced NaN (or non-finite values in linear mode).
    """
    lo, hi = (float(v) for v in interval)
    if not lo < hi:
        if lo == hi:
            return QuadratureResult(0.0, 0.0, 0)
        raise ValueError(f"empty interval ({lo}, {hi})")
    if not rel_tol > 0.0:
        raise ValueError("rel_tol must be positive")
    if breakpoints is None:
        points = geometric_breakpoints(lo, hi, center, scale)
    else:
        points = np.unique([p for p in breakpoints if lo < p < hi])
    if math.isinf(lo) and math.isinf(hi) and len(points) == 0:
        points = np.array([0.0])
    seg = _Segments(lo, hi, list(points))

    ta, tb, kind, c, s = seg.ta, seg.tb, seg.kind, seg.c, seg.s
    val, err = _rule(f, log_integrand, ta, tb, kind, c, s)
    evals = 15 * len(ta)
    total = float(np.sum(val))
    streak = 0
    while True:
        if not math.isfinite(total):
            raise DivergenceError("integral overflowed during refinement")
        err_total = float(np.sum(err))
        target = max(abs_tol, rel_tol * abs(total))
        if err_total <= target:
            _check_edge_mass(ta, tb, kind, val, target, total)
            return QuadratureResult(total, err_total, evals)
        if evals >= max_evals:
            raise NoConvergenceError(
                f"evaluation budget {max_evals} exhausted "
                f"(value {total:.6g}, error {err_total:.3g}, target {target:.3g})"
            )
        mids = 0.5 * (ta + tb)
        splittable = (mids > ta) & (mids < tb)
        cand = np.flatnonzero(splittable)
        if cand.size == 0:
            raise NoConvergenceError(
                f"subintervals at machine resolution (value {total:.6g}, error {err_total:.3g})"
            )
        order = cand[np.argsort(-err[cand], kind="stable")]
        need = err_total - target
        cum = np.cumsum(err[order])
        m = int(np.searchsorted(cum, need, side="left")) + 1
        pick = np.sort(order[: min(m, order.size)])
        room = (max_evals - evals) // 30
        if room < 1:
            room = 1
        pick = pick[:room] if pick.size > room else pick

        pm = mids[pick]
        nta = np.concatenate([ta[pick], pm])
        ntb = np.concatenate([pm, tb[pick]])
        nkind = np.concatenate([kind[pick], kind[pick]])
        nc = np.concatenate([c[pick], c[pick]])
        ns = np.concatenate([s[pick], s[pick]])
        nval, nerr = _rule(f, log_integrand, nta, ntb, nkind, nc, ns)
        evals += 15 * len(nta)

        keep = np.ones(len(ta), dtype=bool)
        keep[pick] = False
        ta = np.concatenate([ta[keep], nta])
        tb = np.concatenate([tb[keep], ntb])
        kind = np.concatenate([kind[keep], nkind])
        c = np.concatenate([c[keep], nc])
        s = np.concatenate([s[keep], ns])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])

        new_total = float(np.sum(val))
        if total != 0.0 and abs(new_total) > (1.0 + DIVERGENCE_GROWTH) * abs(total):
            streak += 1
        else:
            streak = 0
        total = new_total
        if streak >= DIVERGENCE_ROUNDS:
            raise DivergenceError(
                f"integral grew by more than {DIVERGENCE_GROWTH:.0%} in "
                f"{DIVERGENCE_ROUNDS} successive refinement rounds (value {total:.6g})"
            )
