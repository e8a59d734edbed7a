import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcr import densitylab as dl
from qcr import measures
from qcr.specfun import DomainError

C3 = 4 * math.pi / 3
B3 = 2 ** (1 / 3)


def test_unit_ball_volume():
    assert dl.unit_ball_volume(3) == pytest.approx(4.1887902, abs=1e-7)
    assert dl.unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert dl.unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)


def test_example_pair_levels():
    f1, g1, f2, g2 = dl.make_example_pair(3, 2, Fraction(1, 10), Fraction(1, 5))
    assert f1.levels[0] == pytest.approx(0.9 / C3, rel=1e-15)
    assert f1.levels[1] == pytest.approx(0.1 / (C3 * 7), rel=1e-15)
    assert g1.levels[1] == pytest.approx(0.2 / (C3 * 7), rel=1e-15)
    assert sum(f1.masses) == 1 and f2 is g2


def test_example_pair_converges_in_sup_norm():
    gaps = [dl.sup_gap(dl.make_example_pair(3, 2, d, d)[0], dl.make_example_pair(3, 2, d, d)[2])
            for d in (1e-1, 1e-3, 1e-5)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-5


def test_example_pair_domain():
    with pytest.raises(DomainError):
        dl.make_example_pair(3, 1, 0.1, 0.1)
    with pytest.raises(DomainError):
        dl.make_example_pair(3, 2, 0.0, 0.1)


def test_step_density_rejects_bad_input():
    with pytest.raises(ValueError):
        dl.StepDensity(3, (1, 0.5), (0.5, 0.5))
    with pytest.raises(ValueError):
        dl.StepDensity(3, (1,), (0.9,))
    with pytest.raises(ValueError):
        dl.StepDensity(3, (1, 2), (1.5, -0.5))


def test_from_levels_normalizes_exactly():
    rho = dl.StepDensity.from_levels(3, [(1, 3), (2, 1)])
    assert sum(rho.masses) == 1
    assert rho.levels[0] / rho.levels[1] == pytest.approx(3.0, rel=1e-15)


@pytest.mark.parametrize("D", [1, 2, 3, 5])
@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 7.0])
def test_uniform_ball_renyi_is_log_volume(D, alpha):
    f2 = dl.make_example_pair(D, 2, 0.1, 0.1)[2]
    assert dl.renyi_step(f2, alpha) == pytest.approx(math.log(dl.unit_ball_volume(D)), rel=1e-14)


def test_renyi_step_half_mass_example():
    f1 = dl.make_example_pair(3, B3, 0.5, 0.5)[0]
    want = math.log(2) + math.log(C3)
    assert want == pytest.approx(2.1255591, abs=1e-7)
    assert dl.renyi_step(f1, 2) == pytest.approx(want, rel=1e-14)


def test_renyi_step_small_order_limit():
    f1 = dl.make_example_pair(3, 1.5, 0.2, 0.2)[0]
    target = math.log(1.5**3 * C3)
    assert dl.renyi_step(f1, 1e-9) == pytest.approx(target, abs=1e-7)


def test_discrete_small_order_counts_support():
    p = dl.DiscreteDistribution((0.5, 0.25, 0.25, 0.0))
    assert dl.renyi_step(p, 1e-10) == pytest.approx(math.log(3), abs=1e-8)


def test_discrete_with_cell_measures():
    p = dl.DiscreteDistribution((2.0, 0.5), (0.25, 1.0))
    assert dl.renyi_step(p, 1) == pytest.approx(-(0.5 * math.log(2.0) + 0.5 * math.log(0.5)), rel=1e-15)
    with pytest.raises(ValueError):
        dl.DiscreteDistribution((0.5, 0.6))


def test_measures_accept_step_densities():
    f1 = dl.make_example_pair(3, 2, 0.3, 0.3)[0]
    assert measures.renyi(f1, 2.5).value == pytest.approx(dl.renyi_step(f1, 2.5), rel=1e-15)
    assert measures.renyi(f1, 2.5).method == "exact"


def test_effective_domain_and_localization():
    f1, g1, f2, g2 = dl.make_example_pair(3, B3, 0.2, 0.3)
    assert dl.effective_domain_measure(f2) == pytest.approx(C3, rel=1e-15)
    assert dl.effective_domain_measure(f1) == pytest.approx(2 * C3, rel=1e-12)
    hollow = dl.StepDensity(3, (1, 2), (1, 0))
    assert dl.effective_domain_measure(hollow) == pytest.approx(C3, rel=1e-15)
    assert dl.is_localized(f2, f1) == "f_localized"
    assert dl.is_localized(f1, f2) == "g_localized"
    assert dl.is_localized(f2, g2) == "equal"
    assert dl.is_localized(f1, g1) == "equal"
    with pytest.raises(ValueError):
        dl.is_localized(f2, dl.StepDensity(2, (1,), (1,)))


def test_majorization_examples():
    a = dl.DiscreteDistribution((0.7, 0.3))
    b = dl.DiscreteDistribution((0.6, 0.4))
    assert dl.majorizes(a, b) and not dl.majorizes(b, a)
    assert dl.majorizes(a, a)
    for d in (0.01, 0.5, 0.99):
        f1, _, f2, _ = dl.make_example_pair(3, 2, d, d)
        assert dl.majorizes(f2, f1)
        assert not dl.majorizes(f1, f2)
    with pytest.raises(TypeError):
        dl.majorizes(a, f2)


def test_delta_neighboring_example():
    f1, _, f2, _ = dl.make_example_pair(3, B3, 0.01, 0.01)
    gap = dl.sup_gap(f1, f2)
    assert gap == pytest.approx(0.01 / C3, rel=1e-12)
    assert gap == pytest.approx(0.0023873, abs=1e-7)
    assert dl.delta_neighboring(f1, f2, 0.0024)
    assert not dl.delta_neighboring(f1, f2, 0.0023)
    assert dl.delta_neighboring(f1, f1, 1e-300)


def test_transform_scaling_factor():
    f = dl.StepDensity.from_levels(3, [(0.5, 2), (1.2, 1)])
    g = dl.StepDensity.from_levels(3, [(1, 1), (1.7, 3)])
    a, b = 2.25, 3.0
    lhs = measures.rcr(dl.transform(f, 2, (1, 0, 0)), dl.transform(g, 1, (0, 5, 0)), a, b).value
    assert lhs == pytest.approx(0.125 * measures.rcr(f, g, a, b).value, rel=1e-9)
    assert sum(dl.transform(f, 3).masses) == 1


def test_copies_factor():
    f = dl.StepDensity.from_levels(3, [(0.5, 2), (1.2, 1)])
    g = dl.StepDensity.from_levels(3, [(1, 1), (1.7, 3)])
    a = b = 2.0
    n, m = 4, 9
    lhs = measures.rcr(dl.copies(f, n), dl.copies(g, m), a, b).value
    base = measures.rcr(f, g, a, b).value
    assert lhs == pytest.approx((m / n) ** 0.5 * base, rel=1e-9)
    same = measures.rcr(dl.copies(f, 3), dl.copies(g, 3), a, b).value
    assert same == pytest.approx(base, rel=1e-9)


def test_mixture_merges_concentric_and_flags_overlap():
    f1, _, f2, _ = dl.make_example_pair(3, 2, 0.2, 0.2)
    mix = dl.mixture([(f1, 0.5), (f2, 0.5)])
    assert isinstance(mix, dl.StepDensity)
    assert sum(mix.masses) == 1
    shifted = dl.transform(f2, 1, (0.5, 0, 0))
    with pytest.warns(dl.OverlapWarning), pytest.raises(ValueError):
        dl.mixture([(f2, 0.5), (shifted, 0.5)])
    far = dl.transform(f2, 1, (5, 0, 0))
    assert isinstance(dl.mixture([(f2, 0.5), (far, 0.5)]), dl.StepMixture)


def test_near_continuity_ladder_is_monotone():
    for a in (0.5, 1.0, 2.0, 3.0):
        for b in (0.5, 1.0, 2.0, 3.0):
            gaps = [abs(math.expm1(x)) for x in dl.near_continuity_ladder(3, a, b)]
            assert all(x >= y for x, y in zip(gaps, gaps[1:])), (a, b, gaps)


@pytest.mark.parametrize("a,b", [(0.5, 3.0), (1.0, 1.0), (2.0, 0.5), (3.0, 2.0)])
def test_richardson_limit_is_one(a, b):
    assert dl.richardson_limit(3, a, b) == pytest.approx(1.0, abs=1e-6)


def test_extremality_uniform_stationary():
    n = 5
    f = dl.DiscreteDistribution((1.0,) * n, (1.0 / n,) * n)
    order = n / (n - 1)
    res = dl.extremality_residual(f, f, order, order)
    assert res.max == pytest.approx(0.0, abs=1e-12)
    assert res.first_variation == pytest.approx(0.0, abs=1e-12)


def test_extremality_degenerate_order():
    m = (0.25,) * 4
    f = dl.DiscreteDistribution((1.0,) * 4, m)
    g = dl.DiscreteDistribution((2.0, 1.0, 0.5, 0.5), m)
    # stationary only under the normalization constraint, so the constrained
    # first variation vanishes while the unconstrained cell condition does not
    assert dl.extremality_residual(f, g, 2.0, 0.0).first_variation == pytest.approx(0.0, abs=1e-12)
    assert dl.extremality_residual(g, f, 0.0, 3.0).first_variation == pytest.approx(0.0, abs=1e-12)
    assert dl.extremality_residual(g, g, 2.0, 3.0).first_variation > 0.1


def test_extremality_generic_is_not_stationary():
    rng = np.random.default_rng(3)
    f, g = dl.random_discrete(rng, 6), dl.random_discrete(rng, 6)
    assert dl.extremality_residual(f, g, 2.0, 3.0).max > 1e-3
    with pytest.raises(ValueError):
        dl.extremality_residual(f, dl.DiscreteDistribution((0.5, 2.0), (0.5, 0.25)), 2, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 12), st.sampled_from([0.5, 2.0]))
def test_majorization_orders_entropy(seed, n, alpha):
    f, g = dl.random_majorized_pair(np.random.default_rng(seed), n)
    if dl.majorizes(f, g):
        assert dl.renyi_step(f, alpha) <= dl.renyi_step(g, alpha) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(0.05, 3.0), st.floats(0.0, 5.0)), min_size=1, max_size=5))
def test_step_density_normalization_property(shells):
    radii = sorted({round(r, 6) for r, _ in shells})
    levels = [lv for _, lv in shells][: len(radii)]
    if len(levels) < len(radii) or sum(levels) == 0:
        return
    rho = dl.StepDensity.from_levels(3, list(zip(radii, levels)))
    assert sum(rho.masses) == 1
    assert dl.majorizes(rho, rho)
    assert dl.renyi_step(rho, 1e-12) <= math.log(dl.effective_domain_measure(rho)) + 1e-9
