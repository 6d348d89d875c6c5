import math

import numpy as np
import pytest

from evtrenyi import distributions as d
from evtrenyi.errors import DivergenceError, DomainError, PreconditionError
from evtrenyi.limits import MaxStableLaw, ev_pdf
from evtrenyi.maxima import NormalizedMaximaDensity, moment_of_normalized_max, normalized_maxima, weibull_to_frechet
from evtrenyi.norming import Domain, NormingConstants, norming_constants

from oracle_values import MOMENT_EXP_1E4, MOMENT_PARETO2_1E4, MOMENT_UNIFORM_1E4


def test_log_density_examples():
    F = d.exponential()
    D1 = NormalizedMaximaDensity(F, NormingConstants(1, 1.0, 0.0, Domain.GUMBEL))
    assert D1.log_density(0.7) == pytest.approx(-0.7, abs=1e-15)
    U = normalized_maxima(d.uniform(), "weibull", 10)
    assert U.log_density(-1.0) == pytest.approx(9 * math.log(0.9), rel=1e-13)
    P = normalized_maxima(d.pareto(1.0), "frechet", 100)
    assert P.log_density(1.0) == pytest.approx(99 * math.log(0.99), rel=1e-13)


def test_log_density_outside_support_and_vectorized():
    P = normalized_maxima(d.pareto(1.0), "frechet", 100)
    assert P.log_density(0.005) == -math.inf and P.pdf(-1.0) == 0.0
    xs = np.array([0.005, 1.0, 2.0])
    assert P.log_density(xs).shape == (3,)


def test_far_left_tail_is_finite_in_log_space():
    # F**(n-1) underflows to 0 in linear arithmetic here
    D = normalized_maxima(d.exponential(), "gumbel", 10 ** 5)
    v = D.log_density(-6.0)
    assert math.isfinite(v) and v < -300
    y = -6.0 + math.log(1e5)
    assert v == pytest.approx(math.log(1e5) - y + (1e5 - 1) * math.log1p(-math.exp(-y)), rel=1e-12)


def test_support_examples():
    lo, hi = normalized_maxima(d.pareto(1.0), "frechet", 100).support
    assert lo == pytest.approx(0.01, rel=1e-14) and hi == math.inf
    assert normalized_maxima(d.uniform(), "weibull", 50).support == (pytest.approx(-50.0, rel=1e-12), 0.0)
    lo, hi = normalized_maxima(d.exponential(), "gumbel", 1000).support
    assert lo == pytest.approx(-math.log(1000), rel=1e-12) and hi == math.inf


SOURCES = [(d.pareto(1.0), "frechet"), (d.pareto(3.0), "frechet"), (d.reversed_power(3.0), "weibull"),
           (d.reversed_power(0.5), "weibull"), (d.uniform(), "weibull"), (d.exponential(), "gumbel"),
           (d.weibull_min(2.0), "gumbel"), (d.frechet(2.0), "frechet"), (d.weibull_ev(2.0), "weibull"),
           (d.gumbel(), "gumbel")]


@pytest.mark.parametrize("F, dom", SOURCES, ids=lambda v: getattr(v, "label", v))
@pytest.mark.parametrize("n", [10, 1000, 100000])
def test_normalization(F, dom, n):
    D = normalized_maxima(F, dom, n)
    assert D.integrate(D.log_density, 1e-12).value == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("F, dom, xs", [
    (d.exponential(), "gumbel", np.linspace(-1.5, 4, 10)),
    (d.pareto(2.0), "frechet", np.linspace(0.5, 4, 10)),
    (d.uniform(), "weibull", np.linspace(-3, -0.2, 10)),
    (d.weibull_min(2.0), "gumbel", np.linspace(-1, 3, 10)),
])
def test_density_is_derivative_of_cdf(F, dom, xs):
    D = normalized_maxima(F, dom, 1000)
    h = 1e-5
    fd = (np.exp(D.log_cdf(xs + h)) - np.exp(D.log_cdf(xs - h))) / (2 * h)
    np.testing.assert_allclose(D.pdf(xs), fd, rtol=1e-3)


@pytest.mark.parametrize("F, dom, law, xs", [
    (d.pareto(2.0), "frechet", MaxStableLaw.frechet(2.0), np.linspace(0.5, 5, 25)),
    (d.pareto(1.0), "frechet", MaxStableLaw.frechet(1.0), np.linspace(0.5, 5, 25)),
    (d.uniform(), "weibull", MaxStableLaw.weibull(1.0), np.linspace(-3, -0.1, 25)),
    (d.reversed_power(3.0), "weibull", MaxStableLaw.weibull(3.0), np.linspace(-2, -0.1, 25)),
    (d.exponential(), "gumbel", MaxStableLaw.gumbel(), np.linspace(-2, 5, 25)),
    (d.weibull_min(2.0), "gumbel", MaxStableLaw.gumbel(), np.linspace(-2, 5, 25)),
], ids=["pareto2", "pareto1", "uniform", "rpower3", "exponential", "weibull_min2"])
def test_density_convergence_is_monotone(F, dom, law, xs):
    sups = [np.max(np.abs(normalized_maxima(F, dom, n).pdf(xs) - ev_pdf(law, xs))) for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5)]
    assert all(b < a for a, b in zip(sups, sups[1:]))


@pytest.mark.parametrize("beta", [1.5, 2.0, 3.0])
def test_transform_coherence(beta):
    # W = -1/Z links the Weibull maximum of Uniform to the Frechet maximum of 1/(1 - U)
    n = 1000
    W = normalized_maxima(d.uniform(), "weibull", n)
    X = weibull_to_frechet(d.uniform())
    Z = normalized_maxima(X, "frechet", n)
    h_w = W.renyi_entropy(beta).entropy
    integral = Z.integrate(lambda z: beta * Z.log_density(z) + (2 * beta - 2) * np.log(z)).value
    assert math.log(integral) / (1 - beta) == pytest.approx(h_w, abs=1e-6)


def test_transform_examples():
    X = weibull_to_frechet(d.uniform())
    P = d.pareto(1.0)
    xs = np.array([1.0, 1.5, 3.0, 10.0, 1e6])
    np.testing.assert_allclose(X.cdf(xs), P.cdf(xs), rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(X.pdf(xs), P.pdf(xs), rtol=1e-10)
    assert X.l == 1.0 and X.r == math.inf
    R = weibull_to_frechet(d.reversed_power(3.0))
    np.testing.assert_allclose(R.survival(xs), d.pareto(3.0).survival(xs), rtol=1e-9)


def test_norming_duality():
    gap = norming_constants(d.uniform(), "weibull", 50).a
    a = norming_constants(weibull_to_frechet(d.uniform()), "frechet", 50).a
    assert 1 / gap == pytest.approx(50.0, rel=1e-12) and a == pytest.approx(50.0, rel=1e-12)


def test_transform_needs_finite_endpoint():
    with pytest.raises(PreconditionError):
        weibull_to_frechet(d.exponential())


def test_moment_examples():
    euler = 0.5772156649015329
    m = moment_of_normalized_max(normalized_maxima(d.exponential(), "gumbel", 10 ** 4), 1)
    assert abs(m - euler) <= 0.01 and m == pytest.approx(MOMENT_EXP_1E4, abs=1e-9)
    m = moment_of_normalized_max(normalized_maxima(d.pareto(2.0), "frechet", 10 ** 4), 1)
    assert abs(m - math.sqrt(math.pi)) <= 0.01 and m == pytest.approx(MOMENT_PARETO2_1E4, abs=1e-9)
    m = moment_of_normalized_max(normalized_maxima(d.uniform(), "weibull", 10 ** 4), 1)
    assert abs(m + 1) <= 0.01 and m == pytest.approx(MOMENT_UNIFORM_1E4, abs=1e-9)


def test_moment_errors():
    D = normalized_maxima(d.pareto(1.0), "frechet", 100)
    with pytest.raises(PreconditionError):
        moment_of_normalized_max(D, 1, alpha=1.0)
    with pytest.raises(DivergenceError):
        moment_of_normalized_max(D, 1)
    with pytest.raises(DomainError):
        moment_of_normalized_max(D, 0)


def test_shannon_of_gn():
    D = normalized_maxima(d.exponential(), "gumbel", 10 ** 4)
    assert D.shannon_entropy() == pytest.approx(1 + 0.5772156649015329, abs=1e-3)
