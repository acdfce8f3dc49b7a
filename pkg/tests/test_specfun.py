import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from betaens.core import EnsembleSpec
from betaens.errors import DomainError
from betaens.specfun import (
    airy_ai,
    gamma_n_beta,
    hermite_norm_ratio,
    laguerre_norm_ratio,
    log_gamma,
    log_gamma_n_beta,
    log_hermite_partition,
    log_laguerre_partition,
    soft_edge_prefactor,
    stirling_hermite_norm_ratio,
)
from betaens.symop import exact_laguerre_density

mp.mp.dps = 40


def test_log_gamma_examples():
    assert log_gamma(1) == 0.0
    assert log_gamma(5) == pytest.approx(math.log(24), abs=1e-14)
    # duplication formula oracle: Gamma(1/2) Gamma(1) = 2^{1-1} sqrt(pi) Gamma(1)
    oracle = float(mp.log(mp.sqrt(mp.pi)))
    assert abs(log_gamma(0.5) - oracle) < 1e-14
    assert abs(log_gamma(0.5) - 0.5723649429) < 1e-10


@pytest.mark.parametrize("z", [1e-3, 0.37, 2.5, 17.25, 1234.5, 9.9e5])
def test_log_gamma_against_mpmath(z):
    assert abs(log_gamma(z) - float(mp.loggamma(z))) <= 1e-13 * max(1.0, abs(float(mp.loggamma(z))))


@pytest.mark.parametrize("z", [0.0, -1.0, -0.5])
def test_log_gamma_domain(z):
    with pytest.raises(DomainError):
        log_gamma(z)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("z", [0.3, 1.7, 4.2])
def test_gauss_multiplication(n, z):
    lhs = sum(log_gamma(z + j / n) for j in range(n))
    rhs = (n - 1) / 2 * math.log(2 * math.pi) + (0.5 - n * z) * math.log(n) + log_gamma(n * z)
    assert abs(lhs - rhs) < 1e-10


def test_airy_at_zero():
    ai, aip = airy_ai(0.0)
    # Maclaurin oracle: leading coefficients of the series
    assert abs(ai - float(1 / (mp.mpf(3) ** (mp.mpf(2) / 3) * mp.gamma(mp.mpf(2) / 3)))) < 1e-14
    assert abs(aip + float(1 / (mp.mpf(3) ** (mp.mpf(1) / 3) * mp.gamma(mp.mpf(1) / 3)))) < 1e-14
    assert abs(ai - 0.3550280539) < 1e-10 and abs(aip + 0.2588194038) < 1e-10


@pytest.mark.parametrize("x", np.linspace(-20, 20, 41))
def test_airy_against_mpmath(x):
    ai, aip = airy_ai(x)
    ref, refp = float(mp.airyai(x)), float(mp.airyai(x, derivative=1))
    assert abs(ai - ref) <= max(1e-10 * abs(ref), 1e-14)
    assert abs(aip - refp) <= max(1e-10 * abs(refp), 1e-14)


@given(st.floats(-15, 15))
def test_airy_ode_residual(x):
    h = 1e-4
    second = (airy_ai(x + h)[1] - airy_ai(x - h)[1]) / (2 * h)
    assert abs(second - x * airy_ai(x)[0]) <= 1e-6


def test_airy_vectorized():
    xs = np.array([-3.0, 0.0, 2.0])
    ai, aip = airy_ai(xs)
    assert ai.shape == (3,) and ai[1] == airy_ai(0.0)[0]


def test_gamma_n_beta_examples():
    assert gamma_n_beta(0, 2) == 1.0
    for beta in (1.0, 2, 4, 6.5):
        assert gamma_n_beta(1, beta) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma_n_beta(2, 2) == pytest.approx(math.pi, rel=1e-14)
    assert gamma_n_beta(2, 4) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    with pytest.raises(DomainError):
        gamma_n_beta(2, 0)


def test_gamma_n_beta_2d_quadrature():
    # independent 2-d oracle for beta = 4: E|u - v| over exp(-u^2 - v^2)
    # rotating to s = (u - v)/sqrt 2, t = (u + v)/sqrt 2 separates the integral
    from scipy import integrate

    radial, _ = integrate.quad(lambda s: abs(s) * math.exp(-s * s), -np.inf, np.inf)
    val = math.sqrt(math.pi) * math.sqrt(2) * radial
    assert val == pytest.approx(gamma_n_beta(2, 4), rel=1e-12)


@pytest.mark.parametrize("n", range(0, 9))
def test_gamma_n_beta_two_ways_at_beta2(n):
    direct = math.pi ** (n / 2) * 2 ** (-n * (n - 1) / 2) * math.prod(math.factorial(j) for j in range(2, n + 1))
    assert gamma_n_beta(n, 2) == pytest.approx(direct, rel=1e-12)


def test_gamma_n_beta_mpmath_oracle():
    for n, beta in [(3, 6), (4, 4), (6, 6), (5, 10)]:
        b = mp.mpf(beta)
        ref = mp.pi ** (mp.mpf(n) / 2) * mp.mpf(2) ** (-n * (n - 1) / b)
        for j in range(2, n + 1):
            ref *= mp.gamma(1 + 2 * j / b) / mp.gamma(1 + 2 / b)
        assert gamma_n_beta(n, beta) == pytest.approx(float(ref), rel=1e-13)


def test_hermite_norm_ratio_examples():
    assert hermite_norm_ratio(1, 2) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)
    for beta in (2, 4, 6, 3.5):
        assert hermite_norm_ratio(1, beta) == pytest.approx(math.sqrt(beta / (2 * math.pi)), rel=1e-14)


def test_hermite_partition_by_quadrature():
    # G_{beta,2} = int int exp(-beta (x^2 + y^2)/2) |x - y|^beta
    from scipy import integrate

    for beta in (2, 4):
        f = lambda y, x: math.exp(-beta * (x * x + y * y) / 2) * abs(x - y) ** beta
        val, _ = integrate.dblquad(f, -10, 10, -10, 10, epsabs=1e-12)
        assert math.log(val) == pytest.approx(log_hermite_partition(2, beta), abs=1e-8)


def test_laguerre_partition_by_quadrature():
    from scipy import integrate

    for beta, a in [(2, 0.0), (2, 1.0), (4, 0.5)]:
        f1 = lambda x: x ** (a * beta / 2) * math.exp(-beta * x / 2)
        v1, _ = integrate.quad(f1, 0, np.inf)
        assert math.log(v1) == pytest.approx(log_laguerre_partition(1, beta, a), abs=1e-10)
        f2 = lambda y, x: (x * y) ** (a * beta / 2) * math.exp(-beta * (x + y) / 2) * abs(x - y) ** beta
        v2, _ = integrate.dblquad(f2, 0, 80, 0, 80, epsabs=1e-12)
        assert math.log(v2) == pytest.approx(log_laguerre_partition(2, beta, a), abs=1e-7)


@pytest.mark.parametrize("beta", [2, 4, 6])
def test_stirling_ratio_at_n50(beta):
    exact = hermite_norm_ratio(50, beta)
    assert exact / stirling_hermite_norm_ratio(50, beta) == pytest.approx(1.0, abs=0.01)


def test_stirling_ratio_relative_error_is_order_one_over_n():
    errs = [abs(hermite_norm_ratio(N, 2) / stirling_hermite_norm_ratio(N, 2) - 1) for N in (10, 20, 40, 80)]
    for e1, e2 in zip(errs, errs[1:]):
        assert e2 / e1 == pytest.approx(0.5, abs=0.05)


def test_laguerre_norm_ratio_examples():
    assert laguerre_norm_ratio(EnsembleSpec.laguerre(1, 2, 0)) == pytest.approx(1.0, rel=1e-14)
    assert laguerre_norm_ratio(EnsembleSpec.laguerre(1, 2, 1)) == pytest.approx(1.0, rel=1e-14)
    # N = 2, beta = 2, a = 0: the density built on this ratio integrates to 2
    from scipy import integrate

    spec = EnsembleSpec.laguerre(2, 2, 0)
    val, _ = integrate.quad(lambda x: exact_laguerre_density(spec, x), 0, np.inf)
    assert val == pytest.approx(2.0, abs=1e-10)


def test_laguerre_norm_ratio_rejects_hermite():
    with pytest.raises(DomainError):
        laguerre_norm_ratio(EnsembleSpec.hermite(2, 2))


def test_soft_edge_prefactor_values():
    assert soft_edge_prefactor(2) == pytest.approx(0.5, rel=1e-14)
    b = mp.mpf(4)
    ref = (1 / (2 * mp.pi)) * (4 * mp.pi / b) ** (b / 2) * mp.gamma(1 + b / 2)
    for j in range(2, 5):
        ref /= mp.gamma(1 + 2 * j / b) / mp.gamma(1 + 2 / b)
    assert soft_edge_prefactor(4) == pytest.approx(float(ref), rel=1e-13)
    assert soft_edge_prefactor(4) == pytest.approx(math.pi**2 / 12, rel=1e-13)
    for beta in (6, 8, 10):
        assert soft_edge_prefactor(beta) > 0
    for bad in (3, 0, -2, 2.5):
        with pytest.raises(DomainError):
            soft_edge_prefactor(bad)


def test_pure_functions_are_repeatable():
    assert hermite_norm_ratio(7, 6) == hermite_norm_ratio(7, 6)
    assert log_gamma_n_beta(5, 6) == log_gamma_n_beta(5, 6)
