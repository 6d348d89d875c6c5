import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from evtrenyi import distributions as d
from evtrenyi.entropy import location_scale_shift, renyi_entropy_numeric, renyi_order, shannon_entropy_numeric
from evtrenyi.errors import DivergenceError, DomainError
from evtrenyi.limits import MaxStableLaw, limit_renyi_entropy

from oracle_values import SHANNON_FRECHET, SHANNON_GUMBEL, SHANNON_WEIBULL


def gumbel_log(x):
    return -x - np.exp(-x)


def entropy_of(F, beta):
    return renyi_entropy_numeric(F.log_pdf, (F.l, F.r), beta).entropy


def test_examples():
    assert entropy_of(d.uniform(), 2) == pytest.approx(0.0, abs=1e-14)
    assert entropy_of(d.exponential(), 2) == pytest.approx(math.log(2), abs=1e-12)
    assert renyi_entropy_numeric(gumbel_log, (-math.inf, math.inf), 2).entropy == pytest.approx(math.log(4), abs=1e-8)


def test_result_fields():
    res = renyi_entropy_numeric(d.exponential().log_pdf, (0, math.inf), 3.0)
    assert res.beta == 3.0 and res.integral == pytest.approx(1 / 3, rel=1e-12)
    assert res.entropy == pytest.approx(math.log(res.integral) / (1 - 3.0), rel=1e-15)
    assert res.quad_error >= 0


@pytest.mark.parametrize("beta", [0.0, -1.0, 1.0, math.inf])
def test_invalid_order(beta):
    with pytest.raises(DomainError):
        renyi_order(beta)


def test_shannon_examples():
    assert shannon_entropy_numeric(d.uniform().log_pdf, (0, 1)) == pytest.approx(0.0, abs=1e-14)
    assert shannon_entropy_numeric(d.exponential().log_pdf, (0, math.inf)) == pytest.approx(1.0, abs=1e-10)
    assert shannon_entropy_numeric(gumbel_log, (-math.inf, math.inf)) == pytest.approx(SHANNON_GUMBEL, abs=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 5.0])
def test_shannon_of_limit_laws(alpha):
    G = MaxStableLaw.frechet(alpha)
    assert shannon_entropy_numeric(G.log_pdf, G.support) == pytest.approx(SHANNON_FRECHET[alpha], abs=1e-8)
    W = MaxStableLaw.weibull(alpha)
    assert shannon_entropy_numeric(W.log_pdf, W.support) == pytest.approx(SHANNON_WEIBULL[alpha], abs=1e-8)


def test_location_scale_examples():
    assert location_scale_shift(1, 5, 0.7) == 0.7
    assert location_scale_shift(2, 0, math.log(4)) == pytest.approx(math.log(2), abs=1e-15)
    with pytest.raises(DomainError):
        location_scale_shift(0, 0, 1.0)


def test_location_scale_numeric_cross_check():
    # Y = (X - 1)/2 for X ~ Gumbel has density 2 lambda(2y + 1)
    res = renyi_entropy_numeric(lambda y: math.log(2) + gumbel_log(2 * y + 1), (-math.inf, math.inf), 2)
    assert res.entropy == pytest.approx(location_scale_shift(2, 1, math.log(4)), abs=1e-8)


@given(st.floats(-1e6, 1e6), st.floats(-50, 50))
def test_identity_shift(b, h):
    assert location_scale_shift(1, b, h) == h


@given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), st.floats(-50, 50))
def test_composition(a1, a2, h):
    # exact up to the rounding of log(a1) + log(a2) versus log(a1 * a2)
    two = location_scale_shift(a2, 0, location_scale_shift(a1, 0, h))
    one = location_scale_shift(a1 * a2, 0, h)
    assert two == pytest.approx(one, abs=1e-13)


MONO_FAMILIES = [d.pareto(1.0), d.pareto(3.0), d.reversed_power(3.0), d.uniform(), d.exponential(),
                 d.weibull_min(2.0), d.frechet(1.0), d.weibull_ev(2.0), d.gumbel()]


@pytest.mark.parametrize("F", MONO_FAMILIES, ids=lambda F: F.label)
def test_renyi_nonincreasing_in_beta(F):
    hs = [entropy_of(F, b) for b in (1.2, 1.5, 2.0, 3.0)]
    assert all(b <= a + 1e-9 for a, b in zip(hs, hs[1:]))


EV_LAWS = [MaxStableLaw.frechet(a) for a in (0.5, 1, 2, 5)] + [MaxStableLaw.weibull(a) for a in (0.5, 1, 2, 5)] + [MaxStableLaw.gumbel()]


@pytest.mark.parametrize("G", EV_LAWS, ids=lambda G: G.label)
def test_shannon_as_beta_to_one(G):
    delta = 1e-3
    h1 = renyi_entropy_numeric(G.log_pdf, G.support, 1 + delta).entropy
    hs = shannon_entropy_numeric(G.log_pdf, G.support)
    assert abs(h1 - hs) <= 50 * delta


@pytest.mark.parametrize("beta", [1.5, 2.0, 3.0])
def test_closed_form_oracles(beta):
    assert entropy_of(d.exponential(), beta) == pytest.approx(math.log(beta) / (beta - 1), abs=1e-8)
    assert entropy_of(d.uniform(), beta) == pytest.approx(0.0, abs=1e-8)
    for G in EV_LAWS:
        try:
            ref = limit_renyi_entropy(G, beta)
        except DivergenceError:
            continue
        assert renyi_entropy_numeric(G.log_pdf, G.support, beta).entropy == pytest.approx(ref, abs=1e-8)


@pytest.mark.parametrize("G, beta", [(MaxStableLaw.frechet(1), 0.4), (MaxStableLaw.weibull(0.3), 2.0)])
def test_divergence_detected(G, beta):
    with pytest.raises(DivergenceError):
        renyi_entropy_numeric(G.log_pdf, G.support, beta)
