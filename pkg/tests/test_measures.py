import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qcr import measures
from qcr.densitylab import StepDensity
from qcr.measures import QuadratureWarning
from qcr.specfun import DomainError
from qcr.states import PseudoharmonicParams, QuantumNumbers, derive, rho_iso, rho_pho

C3 = 4 * math.pi / 3
FIG = PseudoharmonicParams(3.5, 0.5, 1.0, 1.0)
BALL = StepDensity(3, (1,), (1,))


@pytest.fixture(scope="module")
def ball_quad():
    """Uniform unit ball as a plain quadrature density."""
    return BALL.to_joint_density()


def test_uniform_ball_entropic_moment(ball_quad):
    assert measures.entropic_moment(BALL, 2).value == pytest.approx(3 / (4 * math.pi), rel=1e-15)
    assert measures.entropic_moment(ball_quad, 2).value == pytest.approx(3 / (4 * math.pi), rel=1e-10)
    assert measures.entropic_moment(ball_quad, 2).method == "quadrature"


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.7])
def test_uniform_ball_renyi(ball_quad, alpha):
    assert measures.renyi(ball_quad, alpha).value == pytest.approx(math.log(C3), rel=1e-10)


def test_normalization_self_check():
    for rho in (rho_pho(FIG, QuantumNumbers(1, 2, 1)), rho_iso(FIG, QuantumNumbers(1, 0, 0), -3.0)):
        assert measures.entropic_moment(rho, 1.0).value == pytest.approx(1.0, abs=1e-10)


def test_pho_ground_state_gamma_oracle():
    qn = QuantumNumbers(0, 0, 0)
    d = derive(FIG, 0)
    a, L = d.a, d.L
    n02 = 2 * math.sqrt(a) / math.gamma(L + 1.5)
    want = (a * n02) ** 2 * a ** (2 * L) / (4 * math.pi) * math.gamma(2 * L + 1.5) / (2 * (2 * a) ** (2 * L + 1.5))
    assert measures.entropic_moment(rho_pho(FIG, qn), 2).value == pytest.approx(want, rel=1e-10)


def test_shannon_bracketed_by_neighbouring_orders():
    rho = rho_pho(FIG, QuantumNumbers(1, 1, 0))
    s = measures.shannon(rho).value
    h = 1e-4
    lo, hi = measures.renyi(rho, 1 - h).value, measures.renyi(rho, 1 + h).value
    assert hi <= s <= lo
    # symmetric difference cancels the first-order term
    assert (lo + hi) / 2 == pytest.approx(s, abs=1e-6)


def test_large_order_tends_to_minus_log_sup():
    rho = StepDensity.from_levels(3, [(0.5, 4.0), (1.0, 1.0), (2.0, 0.25)])
    target = -math.log(float(rho.sup_exact()))
    assert measures.renyi(rho, 200).value == pytest.approx(target, rel=0.01)


def test_tsallis_definition_and_conversions():
    assert measures.tsallis_from_renyi(-math.log(0.5), 2.0) == pytest.approx(0.5, rel=1e-15)
    with pytest.raises(DomainError):
        measures.tsallis_from_renyi(0.3, 1.0)
    rho = rho_pho(FIG, QuantumNumbers(0, 0, 0))
    t = measures.tsallis(rho, 2.0).value
    i2 = measures.entropic_moment(rho, 2.0).value
    assert t == pytest.approx(1 - i2, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20), st.floats(0.05, 10).filter(lambda a: abs(a - 1) > 1e-3))
def test_tsallis_round_trip(R, alpha):
    x = (1 - alpha) * R
    assume(abs(x) <= 30)
    back = measures.renyi_from_tsallis(measures.tsallis_from_renyi(R, alpha), alpha)
    # inverting 1 + (1-alpha) T = e^x amplifies rounding by roughly e^{|x|}
    cond = (1 + abs(R)) * math.exp(abs(x))
    assert back == pytest.approx(R, abs=1e-14 * cond)


def test_delta_like_limit():
    # a sharp step of unit volume: both entropies vanish
    r = (3 / (4 * math.pi)) ** (1 / 3)
    rho = StepDensity(3, (r,), (1,))
    assert measures.renyi(rho, 2.5).value == pytest.approx(0.0, abs=1e-12)
    assert measures.tsallis(rho, 2.5).value == pytest.approx(0.0, abs=1e-12)


def test_length_and_disequilibrium(ball_quad):
    for a in (0.5, 2.0, 3.0):
        assert measures.renyi_length(ball_quad, a).value == pytest.approx(1.0, rel=1e-10)
    assert measures.disequilibrium(BALL).value == pytest.approx(3 / (4 * math.pi), rel=1e-15)
    rho = rho_pho(FIG, QuantumNumbers(0, 1, 0))
    v2 = math.exp(measures.renyi(rho, 2).value)
    assert measures.disequilibrium(rho).value * v2 == pytest.approx(1.0, rel=1e-14)


def test_negative_entropy_is_legal():
    rho = StepDensity(3, (0.1,), (1,))
    assert measures.renyi(rho, 2).value < 0


def test_rcr_identities():
    f = rho_pho(FIG, QuantumNumbers(0, 1, 1))
    g = rho_iso(FIG, QuantumNumbers(0, 1, 1), 2.5)
    a, b = 2.25, 3.0
    assert measures.rcr(f, f, a, a).value == 1.0
    prod = measures.rcr(f, g, a, b).value * measures.rcr(g, f, b, a).value
    assert prod == pytest.approx(1.0, abs=1e-10)
    lhs = measures.rcr(f, g, a, b).value * measures.rcr(g, f, a, b).value
    rhs = measures.grc(f, a, b).value * measures.grc(g, a, b).value
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_complexity_family(ball_quad):
    rho = rho_pho(FIG, QuantumNumbers(1, 0, 0))
    assert measures.grc(rho, 2.0, 2.0).value == 1.0
    assert measures.grc(ball_quad, 0.7, 3.0).value == pytest.approx(1.0, rel=1e-9)
    assert measures.src(rho, 1.0).value == pytest.approx(measures.lmc(rho).value, rel=1e-15)
    assert measures.structural_entropy(rho).value == pytest.approx(math.log(measures.lmc(rho).value), rel=1e-12)


def test_bound_constant():
    assert measures.bound_b(3, 1.0) == pytest.approx(1.5 * math.log(2 * math.pi * math.e), rel=1e-15)
    assert measures.bound_b(3, 1.0) == pytest.approx(4.2568156, abs=1e-7)
    for h in (1e-5, -1e-5):
        assert measures.bound_b(3, 1 + h) == pytest.approx(measures.bound_b(3, 1.0), abs=1e-4)
    with pytest.raises(DomainError):
        measures.bound_b(3, 0.6)


def test_bound_constant_independent_transcription():
    D, a = 3, 2.0
    w = 5 * a - 3
    want = (1.5 * math.log(math.pi * w / (a - 1)) + a / (a - 1) * math.log(w / (2 * a))
            + math.lgamma(a / (a - 1)) - math.lgamma(w / (2 * (a - 1))))
    assert measures.bound_b(D, a) == pytest.approx(want, rel=1e-14)


def test_upper_bound_ingredients():
    assert measures.second_moment(BALL) == pytest.approx(0.6, rel=1e-15)
    assert measures.sup_norm(BALL) == (pytest.approx(3 / (4 * math.pi), rel=1e-15), False)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        assert measures.second_moment(BALL.to_joint_density()) == pytest.approx(0.6, rel=1e-10)


def test_upper_bound_holds_and_flags_beta_one():
    f = rho_pho(FIG, QuantumNumbers(0, 0, 0))
    g = rho_iso(FIG, QuantumNumbers(0, 0, 0), 2.5)
    with pytest.warns(QuadratureWarning):
        b = measures.rcr_upper_bound(f, g, 2.0, 3.0)
    assert measures.rcr(f, g, 2.0, 3.0).value <= b.value
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        b1 = measures.rcr_upper_bound(f, g, 2.0, 1.0)
    assert "beta_one_branch" in b1.notes


def test_sup_norm_grid_matches_analytic_peak():
    rho = rho_pho(FIG, QuantumNumbers(0, 0, 0))
    d = derive(FIG, 0)
    z = d.L  # radial peak of e^{-z} z^L
    peak = d.a * 2 * math.sqrt(d.a) / math.gamma(d.L + 1.5) * math.exp(-z) * z**d.L / (4 * math.pi)
    val, approx = measures.sup_norm(rho)
    assert approx
    assert val == pytest.approx(peak, rel=1e-10)


def test_order_must_be_positive():
    with pytest.raises(DomainError):
        measures.renyi(BALL, 0.0)
    with pytest.raises(DomainError):
        measures.renyi(BALL, -1.0)


def test_measure_value_error_is_nonnegative():
    mv = measures.renyi(rho_iso(FIG, QuantumNumbers(1, 1, 0), -3.0), 2.5)
    assert mv.abs_error_estimate >= 0
    assert mv.method == "quadrature"
    assert np.isfinite(mv.value)
