"""Pseudoharmonic oscillator and its one-parameter isospectral family.

Units are whatever the caller supplies, provided they are consistent.  The
molecules module feeds (eV, Angstrom) with mu given as mu*c^2 in eV and hbar
given as c*hbar in eV*Angstrom, so ``a`` comes out in 1/Angstrom^2 and
``hbar * omega_r`` in eV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammainc

from .specfun import (
    DomainError,
    assoc_laguerre,
    assoc_legendre_abs,
    ln_gamma,
)

__all__ = [
    "PseudoharmonicParams",
    "DerivedParams",
    "QuantumNumbers",
    "IsospectralParams",
    "JointDensity",
    "check_lambda",
    "derive",
    "energy",
    "energy_spacing",
    "pho_potential",
    "iso_potential",
    "sph_harm_sq",
    "angular_factor",
    "rho_pho",
    "rho_iso",
    "radial_wavefunction_pho",
    "radial_wavefunction_iso",
]


@dataclass(frozen=True)
class PseudoharmonicParams:
    De: float
    re: float
    mu: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("De", "re", "mu", "hbar"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")


@dataclass(frozen=True)
class DerivedParams:
    a: float
    L: float
    omega_r: float


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int
    m: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n!r}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a nonnegative integer, got {self.l!r}")
        if int(self.m) != self.m or abs(self.m) > self.l:
            raise DomainError(f"need |m| <= l, got l={self.l}, m={self.m}")


def check_lambda(lam: float) -> float:
    """Enforce lambda in (-inf, -2) U (1, inf)."""
    lam = float(lam)
    if not math.isfinite(lam) or -2.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in (-inf, -2) U (1, inf), got {lam!r}")
    return lam


@dataclass(frozen=True)
class IsospectralParams:
    base: PseudoharmonicParams
    lam: float

    def __post_init__(self):
        check_lambda(self.lam)


@dataclass(frozen=True)
class JointDensity:
    """A normalized 3-D density with metadata for the quadrature oracle.

    Separable densities factor as ``radial(r) * angular(cos theta)`` where
    ``int radial r^2 dr = 1`` and ``2 pi int angular dx = 1``.  The radial
    factor is exposed in log form (``log_radial``) so that high powers of
    sharply peaked molecular densities never underflow.
    """

    evaluator: Callable
    dimension: int = 3
    separable: bool = False
    phi_uniform: bool = False
    radial_tail_scale: float = 1.0
    sup_hint: float | None = None
    log_radial: Callable | None = None
    angular: Callable | None = None
    radial_support: float | None = None
    radial_breakpoints: tuple = ()
    radial_center: float | None = None
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __call__(self, r, theta, phi=0.0):
        return self.evaluator(r, theta, phi)


def derive(params: PseudoharmonicParams, l: int) -> DerivedParams:
    a = math.sqrt(2.0 * params.mu * params.De) / (params.hbar * params.re)
    L = -0.5 + math.sqrt(l * (l + 1) + 0.25 + a * a * params.re**4)
    omega = math.sqrt(params.De / (2.0 * params.mu * params.re**2))
    return DerivedParams(a=a, L=L, omega_r=omega)


def energy(params: PseudoharmonicParams, qn: QuantumNumbers) -> float:
    """Ro-vibrational energy; the isospectral partners share it for every lambda."""
    d = derive(params, qn.l)
    return params.hbar * d.omega_r * (4 * qn.n + 2 * d.L + 3) - 2.0 * params.De


def energy_spacing(params: PseudoharmonicParams) -> float:
    return 2.0 * params.hbar * math.sqrt(2.0 * params.De / (params.mu * params.re**2))


def pho_potential(params: PseudoharmonicParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("potential requires r > 0")
    out = params.De * (r / params.re - params.re / r) ** 2
    return float(out) if out.ndim == 0 else out


def _lower_p(s: float, z):
    # vectorized library kernel; agrees with specfun's series/fraction to ~1e-12
    out = gammainc(s, np.asarray(z, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def iso_potential(params: PseudoharmonicParams, l: int, lam: float, r):
    """V - (hbar^2/mu) d^2/dr^2 ln(lambda + P(L+3/2, a r^2)), derivatives analytic."""
    lam = check_lambda(lam)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("potential requires r > 0")
    d = derive(params, l)
    s = d.L + 1.5
    z = d.a * r * r
    P = _lower_p(s, z)
    # g = z^{s-1} e^{-z} / Gamma(s) = dP/dz
    g = np.exp((s - 1.0) * np.log(z) - z - ln_gamma(s))
    dP = 2.0 * d.a * r * g
    d2P = 2.0 * d.a * g * (2.0 * s - 1.0 - 2.0 * z)
    denom = lam + P
    corr = d2P / denom - (dP / denom) ** 2
    out = pho_potential(params, r) - params.hbar**2 / params.mu * corr
    return float(out) if np.ndim(out) == 0 else out


def _ylm_norm(l: int, m: int) -> float:
    m = abs(m)
    return (2 * l + 1) / (4.0 * math.pi) * math.exp(math.lgamma(l - m + 1) - math.lgamma(l + m + 1))


def angular_factor(l: int, m: int) -> Callable:
    """|Y_lm|^2 as a function of x = cos(theta)."""
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    c = _ylm_norm(l, m)

    def theta_part(x):
        return c * assoc_legendre_abs(l, m, x) ** 2

    return theta_part


def sph_harm_sq(l: int, m: int, theta):
    """|Y_lm(theta, phi)|^2; independent of phi."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > math.pi):
        raise DomainError("theta must lie in [0, pi]")
    out = angular_factor(l, m)(np.clip(np.cos(theta), -1.0, 1.0))
    return float(out) if np.ndim(out) == 0 else out


def _log_abs(x):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def _build_density(log_radial, ang, tail_scale, center, label, meta):
    def evaluator(r, theta, phi=0.0):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            rad = np.exp(log_radial(r))
        x = np.clip(np.cos(np.asarray(theta, dtype=float)), -1.0, 1.0)
        out = rad * ang(x)
        return float(out) if np.ndim(out) == 0 else out

    return JointDensity(
        evaluator=evaluator,
        dimension=3,
        separable=True,
        phi_uniform=True,
        radial_tail_scale=tail_scale,
        log_radial=log_radial,
        angular=ang,
        radial_center=center,
        label=label,
        meta=meta,
    )


def _z_of_r(a, r):
    r = np.asarray(r, dtype=float)
    return a * r * r


def rho_pho(params: PseudoharmonicParams, qn: QuantumNumbers) -> JointDensity:
    d = derive(params, qn.l)
    a, L, n = d.a, d.L, qn.n
    k = L + 0.5
    log_n2 = math.lgamma(n + 1) + math.log(2.0 * math.sqrt(a)) - ln_gamma(n + L + 1.5)
    const = math.log(a) + log_n2

    def log_radial(r):
        z = _z_of_r(a, r)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = const - z + L * np.log(z) + 2.0 * _log_abs(assoc_laguerre(n, k, z))
        return out

    tail = math.sqrt((2 * n + L + 3) / a)
    center = math.sqrt((2 * n + L + 1.5) / a)
    meta = {"system": "pho", "a": a, "L": L, "n": n, "l": qn.l, "m": qn.m}
    return _build_density(log_radial, angular_factor(qn.l, qn.m), tail, center,
                          f"pho(n={n},l={qn.l},m={qn.m})", meta)


def _iso_ratio(n, s, L, lam, z):
    """Phi_n / (lambda + P) with P = P(s, z); z may be an array."""
    P = _lower_p(s, z)
    if n == 0:
        return 1.0 / (lam + P)
    with np.errstate(divide="ignore", invalid="ignore"):
        # z^s e^{-z} / Gamma(s), the power term read as (a r^2)^{(2L+3)/2}
        h = np.exp(s * np.log(z) - z - ln_gamma(s))
    h = np.where(np.asarray(z) > 0, h, 0.0)
    out = assoc_laguerre(n, L + 0.5, z) - h * assoc_laguerre(n - 1, s, z) / (n * (lam + P))
    return out


def _iso_log_const(n, a, L, lam):
    s = L + 1.5
    if n == 0:
        log_c2 = math.log(lam * (lam + 1.0))
    else:
        log_c2 = math.lgamma(n + 1) + ln_gamma(s) - ln_gamma(n + s)
    return math.log(2.0) + 1.5 * math.log(a) + log_c2 - ln_gamma(s)


def rho_iso(params: PseudoharmonicParams, qn: QuantumNumbers, lam: float) -> JointDensity:
    lam = check_lambda(lam)
    d = derive(params, qn.l)
    a, L, n = d.a, d.L, qn.n
    s = L + 1.5
    const = _iso_log_const(n, a, L, lam)

    def log_radial(r):
        z = _z_of_r(a, r)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = const + L * np.log(z) - z + 2.0 * _log_abs(_iso_ratio(n, s, L, lam, z))
        return out

    tail = math.sqrt((2 * n + L + 3) / a)
    center = math.sqrt((2 * n + L + 1.5) / a)
    meta = {"system": "iso", "a": a, "L": L, "n": n, "l": qn.l, "m": qn.m, "lambda": lam}
    return _build_density(log_radial, angular_factor(qn.l, qn.m), tail, center,
                          f"iso(n={n},l={qn.l},m={qn.m},lambda={lam:g})", meta)


def radial_wavefunction_pho(params: PseudoharmonicParams, n: int, l: int, r):
    """Signed radial amplitude u with u^2 equal to the radial density factor."""
    d = derive(params, l)
    a, L = d.a, d.L
    z = _z_of_r(a, r)
    log_amp = 0.5 * (math.log(a) + math.lgamma(n + 1) + math.log(2 * math.sqrt(a))
                     - ln_gamma(n + L + 1.5))
    with np.errstate(divide="ignore"):
        env = np.exp(log_amp - 0.5 * z + 0.5 * L * np.log(z))
    return env * assoc_laguerre(n, L + 0.5, z)


def radial_wavefunction_iso(params: PseudoharmonicParams, n: int, l: int, lam: float, r):
    lam = check_lambda(lam)
    d = derive(params, l)
    a, L = d.a, d.L
    z = _z_of_r(a, r)
    const = _iso_log_const(n, a, L, lam)
    with np.errstate(divide="ignore"):
        env = np.exp(0.5 * (const + L * np.log(z) - z))
    return env * _iso_ratio(n, L + 1.5, L, lam, z)
