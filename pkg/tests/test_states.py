import math

import numpy as np
import pytest
from scipy import integrate

from qcr import measures
from qcr.specfun import DomainError, regularized_lower_gamma
from qcr.states import (
    PseudoharmonicParams,
    QuantumNumbers,
    check_lambda,
    derive,
    energy,
    energy_spacing,
    iso_potential,
    pho_potential,
    radial_wavefunction_iso,
    radial_wavefunction_pho,
    rho_iso,
    rho_pho,
    sph_harm_sq,
)

FIG = PseudoharmonicParams(3.5, 0.5, 1.0, 1.0)


def test_derived_parameters():
    d = derive(FIG, 0)
    assert d.a == pytest.approx(2 * math.sqrt(7), rel=1e-15)
    assert d.L == pytest.approx(math.sqrt(2) - 0.5, rel=1e-15)
    assert d.omega_r == pytest.approx(math.sqrt(7), rel=1e-15)


def test_effective_angular_momentum_grows_like_l():
    for l in (10**3, 10**5):
        assert derive(FIG, l).L / l == pytest.approx(1.0, abs=2.0 / l)


def test_ground_energy():
    want = math.sqrt(7) * (2 * (math.sqrt(2) - 0.5) + 3) - 7
    assert energy(FIG, QuantumNumbers(0, 0, 0)) == pytest.approx(want, rel=1e-14)
    assert want == pytest.approx(5.774817395677, abs=1e-12)


def test_level_spacing_is_uniform():
    for l in (0, 2):
        gaps = [energy(FIG, QuantumNumbers(n + 1, l, 0)) - energy(FIG, QuantumNumbers(n, l, 0)) for n in range(5)]
        assert np.allclose(gaps, energy_spacing(FIG), rtol=1e-13)


def test_potential_anchors():
    assert pho_potential(FIG, FIG.re) == 0.0
    assert pho_potential(FIG, 2 * FIG.re) == pytest.approx(2.25 * FIG.De, rel=1e-15)


def test_iso_potential_finite_difference_oracle():
    lam, l = 2.5, 1
    d = derive(FIG, l)
    s = d.L + 1.5

    def lnw(r):
        return math.log(lam + regularized_lower_gamma(s, d.a * r * r))

    for r in (0.2, 0.45, 0.8):
        h = 1e-4
        second = (lnw(r + h) - 2 * lnw(r) + lnw(r - h)) / (h * h)
        want = pho_potential(FIG, r) - FIG.hbar**2 / FIG.mu * second
        assert iso_potential(FIG, l, lam, r) == pytest.approx(want, rel=1e-6, abs=1e-6)


def test_iso_potential_limits():
    r = np.array([0.3, 0.5, 0.9])
    gap = np.abs(iso_potential(FIG, 0, 1e8, r) - pho_potential(FIG, r))
    assert gap.max() < 1e-6
    assert iso_potential(FIG, 0, 2.5, 1e-6) == pytest.approx(pho_potential(FIG, 1e-6), rel=1e-9)


def test_lambda_domain():
    for bad in (-2.0, 0.0, 0.5, 1.0):
        with pytest.raises(DomainError):
            check_lambda(bad)
        with pytest.raises(DomainError):
            rho_iso(FIG, QuantumNumbers(0, 0, 0), bad)
    assert check_lambda(-2.0001) == -2.0001


def test_quantum_number_validation():
    with pytest.raises(DomainError):
        QuantumNumbers(0, 1, 2)
    with pytest.raises(DomainError):
        QuantumNumbers(-1, 0, 0)
    with pytest.raises(DomainError):
        PseudoharmonicParams(-1.0, 1.0, 1.0)


def test_spherical_harmonic_values():
    assert sph_harm_sq(0, 0, 0.7) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    assert sph_harm_sq(1, 0, 0.0) == pytest.approx(3 / (4 * math.pi), rel=1e-15)


@pytest.mark.parametrize("qn", [QuantumNumbers(0, 0, 0), QuantumNumbers(2, 1, 1), QuantumNumbers(3, 2, -2)])
def test_pho_normalization(qn):
    assert math.exp(measures.log_entropic_moment(rho_pho(FIG, qn), 1.0).value) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("lam", [-3.0, 1.5, 2.5])
@pytest.mark.parametrize("qn", [QuantumNumbers(0, 0, 0), QuantumNumbers(1, 1, 0), QuantumNumbers(2, 0, 0)])
def test_iso_normalization(lam, qn):
    assert math.exp(measures.log_entropic_moment(rho_iso(FIG, qn, lam), 1.0).value) == pytest.approx(1.0, abs=1e-8)


def test_pho_ground_state_shape():
    rho = rho_pho(FIG, QuantumNumbers(0, 1, 0))
    d = derive(FIG, 1)
    r = np.array([0.2, 0.4, 0.7])
    z = d.a * r * r
    ratio = rho(r, 0.3) / (np.exp(-z) * z**d.L)
    assert np.allclose(ratio, ratio[0], rtol=1e-12)
    assert rho(0.0, 0.3) == 0.0


def _overlap(u, v):
    val, _ = integrate.quad(lambda r: u(r) * v(r) * r * r, 0.0, 4.0, epsabs=1e-13, epsrel=1e-12, limit=400)
    return val


@pytest.mark.parametrize("lam", [-3.0, 2.5])
def test_iso_orthonormality(lam):
    l = 1
    waves = [lambda r, n=n: float(radial_wavefunction_iso(FIG, n, l, lam, r)) for n in range(4)]
    for i in range(4):
        for j in range(i, 4):
            assert _overlap(waves[i], waves[j]) == pytest.approx(float(i == j), abs=1e-8)


def test_pho_orthonormality():
    waves = [lambda r, n=n: float(radial_wavefunction_pho(FIG, n, 2, r)) for n in range(4)]
    for i in range(4):
        for j in range(i, 4):
            assert _overlap(waves[i], waves[j]) == pytest.approx(float(i == j), abs=1e-8)


def test_iso_tends_to_pho_in_sup_norm():
    qn = QuantumNumbers(1, 0, 0)
    r = np.linspace(1e-3, 1.5, 2001)
    pho = rho_pho(FIG, qn)(r, 0.0)
    iso = rho_iso(FIG, qn, 1e4)(r, 0.0)
    assert np.max(np.abs(iso - pho)) < 1e-3 * np.max(pho)


def test_densities_nonnegative_on_grid():
    r = np.linspace(0.0, 2.0, 401)
    th = np.linspace(0.0, math.pi, 37)
    R, T = np.meshgrid(r, th)
    for rho in (rho_pho(FIG, QuantumNumbers(2, 2, 1)), rho_iso(FIG, QuantumNumbers(2, 2, 1), -3.0)):
        assert np.all(rho(R, T) >= 0)


def test_iso_denominator_stays_positive():
    d = derive(FIG, 0)
    for lam in (-2.0001, 1.0001):
        vals = [abs(lam + regularized_lower_gamma(d.L + 1.5, z)) for z in np.linspace(0, 50, 501)]
        assert min(vals) > 0
