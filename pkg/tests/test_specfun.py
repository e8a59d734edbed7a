import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from qcr.specfun import (
    DomainError,
    assoc_laguerre,
    assoc_legendre_abs,
    lauricella_a_coeff,
    ln_binomial,
    ln_gamma,
    log_lauricella_a_coeff,
    regularized_lower_gamma,
    regularized_upper_gamma,
    upper_incomplete_gamma,
)


def test_ln_gamma_anchors():
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-14)


def test_ln_gamma_product_oracle():
    # Gamma(7.5) built up from Gamma(0.5) by the recurrence
    g = math.sqrt(math.pi)
    x = 0.5
    while x < 7.5:
        g *= x
        x += 1.0
    assert ln_gamma(7.5) == pytest.approx(math.log(g), rel=1e-14)


def test_ln_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        ln_gamma(0.0)


def test_ln_binomial_integer_case():
    assert math.exp(ln_binomial(10, 3)) == pytest.approx(120.0, rel=1e-13)


def test_lower_gamma_anchors():
    assert regularized_lower_gamma(1.0, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert regularized_lower_gamma(3.2, 0.0) == 0.0


def test_lower_gamma_quadrature_oracle():
    s, x = 2.414214, 1.75
    num, _ = integrate.quad(lambda t: t ** (s - 1) * math.exp(-t), 0, x, epsabs=0, epsrel=1e-13)
    assert regularized_lower_gamma(s, x) == pytest.approx(num / math.gamma(s), rel=1e-12)


def test_upper_incomplete_gamma():
    for x in (0.1, 1.0, 7.0):
        assert upper_incomplete_gamma(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)
    assert upper_incomplete_gamma(2.5, 0.0) == pytest.approx(math.gamma(2.5), rel=1e-14)
    num, _ = integrate.quad(lambda t: t**1.5 * math.exp(-t), 3.0, np.inf, epsabs=0, epsrel=1e-13)
    assert upper_incomplete_gamma(2.5, 3.0) == pytest.approx(num, rel=1e-11)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 400.0), st.floats(0.0, 800.0))
def test_incomplete_gamma_complement(s, x):
    assert regularized_lower_gamma(s, x) + regularized_upper_gamma(s, x) == pytest.approx(1.0, abs=1e-12)


def test_laguerre_low_degrees():
    assert assoc_laguerre(0, 0.7, 3.3) == 1.0
    assert assoc_laguerre(1, 0.7, 3.3) == pytest.approx(1 + 0.7 - 3.3, abs=1e-15)
    assert assoc_laguerre(2, 0.5, 1.0) == pytest.approx(-0.125, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.floats(-0.9, 20.0), st.floats(0.0, 60.0))
def test_laguerre_recurrence(n, k, x):
    lhs = (n + 1) * assoc_laguerre(n + 1, k, x)
    rhs = (2 * n + k + 1 - x) * assoc_laguerre(n, k, x) - (n + k) * assoc_laguerre(n - 1, k, x)
    scale = max(abs(lhs), abs((2 * n + k + 1 - x) * assoc_laguerre(n, k, x)), 1.0)
    assert abs(lhs - rhs) <= 1e-10 * scale


def test_laguerre_matches_mpmath():
    for n, k, x in ((5, 2.3, 4.1), (12, 0.5, 9.0), (20, 7.7, 30.0)):
        ref = float(mpmath.laguerre(n, k, x))
        assert assoc_laguerre(n, k, x) == pytest.approx(ref, rel=1e-11, abs=1e-12)


def test_legendre_examples():
    assert assoc_legendre_abs(0, 0, 0.4) == 1.0
    assert assoc_legendre_abs(1, 0, 0.3) == pytest.approx(0.3, abs=1e-16)
    assert assoc_legendre_abs(2, 1, 0.5) == pytest.approx(3 * 0.5 * math.sqrt(0.75), rel=1e-14)
    assert assoc_legendre_abs(2, -1, 0.5) == assoc_legendre_abs(2, 1, 0.5)


def test_legendre_rejects_bad_m():
    with pytest.raises(DomainError):
        assoc_legendre_abs(1, 2, 0.1)


# ---------------------------------------------------------------------------
# Lauricella coefficient


def _brute_force(p, mu, beta, degrees, params, args):
    """Nested enumeration in extended precision."""
    with mpmath.workdps(50):
        pref = mpmath.rf(beta + 1, mu)
        for m, a in zip(degrees, params):
            pref *= mpmath.binomial(m + a, m)
        top = mu + beta + 1
        total = mpmath.mpf(0)
        for js in itertools.product(*(range(m + 1) for m in degrees)):
            for q in range(p + 1):
                term = mpmath.rf(top, sum(js) + q)
                for j, m, a, t in zip(js, degrees, params, args):
                    term *= mpmath.rf(-m, j) / mpmath.rf(a + 1, j) * mpmath.mpf(t) ** j / mpmath.factorial(j)
                term *= mpmath.rf(-p, q) / mpmath.rf(beta + 1, q) / mpmath.factorial(q)
                total += term
        return float(pref * total)


def test_lauricella_constant_term():
    mu, beta = 3.7, 0.0
    v = lauricella_a_coeff(0, mu, beta, [0, 0], [1.3, 1.3], [0.4, 0.4])
    assert v == pytest.approx(math.gamma(beta + 1 + mu) / math.gamma(beta + 1), rel=1e-13)


def test_lauricella_three_term_sum():
    a, t, mu, beta = 1.3, -0.25, 2.2, 0.5
    v = lauricella_a_coeff(0, mu, beta, [1, 1], [a, a], [t, t])
    pref = math.gamma(beta + 1 + mu) / math.gamma(beta + 1) * (1 + a) ** 2
    x = -t / (a + 1)
    c = mu + beta + 1
    closed = pref * (1 + 2 * c * x + c * (c + 1) * x * x)
    assert v == pytest.approx(closed, rel=1e-13)


@pytest.mark.parametrize("seed", range(12))
def test_lauricella_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    s = int(rng.integers(1, 5))
    degrees = [int(d) for d in rng.integers(0, 5, size=s)]
    p = int(rng.integers(0, 4))
    params = [float(x) for x in rng.uniform(0.2, 3.0, size=s)]
    args = [float(x) for x in rng.uniform(-2.0, 2.0, size=s)]
    mu, beta = float(rng.uniform(0.5, 6.0)), float(rng.uniform(0.0, 3.0))
    ref = _brute_force(p, mu, beta, degrees, params, args)
    got = lauricella_a_coeff(p, mu, beta, degrees, params, args)
    assert got == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_lauricella_extended_precision_under_cancellation():
    # heavy alternation: large degrees with arguments near the params
    degrees, params, args = [8, 8, 8, 8], [1.2] * 4, [1.9] * 4
    ref = _brute_force(6, 9.5, 1.5, degrees, params, args)
    sign, lv, diag = log_lauricella_a_coeff(6, 9.5, 1.5, degrees, params, args)
    assert sign * math.exp(lv) == pytest.approx(ref, rel=1e-11)


def test_determinism():
    args = (3, 4.25, 1.0, [2, 3, 1], [0.9, 1.7, 2.2], [0.3, -1.1, 0.8])
    assert lauricella_a_coeff(*args) == lauricella_a_coeff(*args)
    assert regularized_lower_gamma(7.3, 5.9) == regularized_lower_gamma(7.3, 5.9)
