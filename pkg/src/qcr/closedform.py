"""Closed-form Renyi entropies and complexity ratios for integer orders.

Pseudoharmonic states use the terminating Lauricella coefficient A_0.  The
isospectral states need the entropic moment of ``(lambda + P)^{-2 alpha}``
weighted by a gamma kernel, where P is the regularized lower incomplete
gamma function.  Expanding P in its alternating power series gives a series
that does not converge absolutely once the power of P exceeds the order, so
P is written in the Kummer form

    P(s, z) = z^s e^{-z} / Gamma(s+1) * sum_k z^k / (s+1)_k,

whose coefficients are all positive.  Powers P^j then carry the exponential
e^{-j z}; every gamma integral stays convergent and the j-fold coefficient
sums are computed by repeated discrete convolution in scaled log space.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy.special import gammaln

from .measures import MeasureValue
from .specfun import (
    DomainError,
    SeriesDiagnostics,
    laguerre_coefficients,
    ln_binomial,
    ln_gamma,
    log_lauricella_a_coeff,
)
from .states import PseudoharmonicParams, QuantumNumbers, check_lambda, derive

__all__ = [
    "TruncationPolicy",
    "MuIndices",
    "CombinatorialBudgetError",
    "mu_indices",
    "j2_moment",
    "log_j2_moment",
    "log_moment_pho_closed",
    "log_moment_iso_closed",
    "renyi_pho_closed",
    "renyi_iso_closed",
    "rcr_closed",
    "grc_closed",
    "src_closed",
    "DIRECTIONS",
]

log = logging.getLogger(__name__)

DIRECTIONS = ("iso_over_pho", "pho_over_iso", "iso_over_iso", "pho_over_pho")

# Per-entry cut-off (natural log) for Kummer weights and convolution tails.
_LOG_NEGLIGIBLE = -100.0


class CombinatorialBudgetError(RuntimeError):
    """A finite sum would exceed the configured term budget."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Caps for the isospectral series.

    ``j_max`` bounds the power of P, ``p_max`` the length of the convolved
    coefficient arrays and ``term_cap`` the size of any finite enumeration.
    """

    j_max: int = 2000
    p_max: int = 400_000
    rel_tol: float = 1e-13
    term_cap: int = 200_000

    def __post_init__(self):
        if self.j_max < 1 or self.p_max < 1 or self.term_cap < 1:
            raise ValueError("caps must be >= 1")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")


@dataclass(frozen=True)
class MuIndices:
    mu1: float
    mu1p: float
    mu2: float
    mu2p: float
    mu3: float
    mu3p: float


def mu_indices(L: float, alpha: float, beta: float, i: int = 0, j: int = 0, p: int = 0) -> MuIndices:
    s = L + 1.5
    return MuIndices(
        mu1=alpha * L + 0.5,
        mu1p=beta * L + 0.5,
        mu2=p + s * j + alpha * L + 0.5,
        mu2p=p + s * j + beta * L + 0.5,
        mu3=p + s * (i + j) + alpha * L + 0.5,
        mu3p=p + s * (i + j) + beta * L + 0.5,
    )


def _check_int_order(alpha, name="alpha", minimum=2) -> int:
    if isinstance(alpha, bool) or int(alpha) != alpha or alpha < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {alpha!r}")
    return int(alpha)


# ---------------------------------------------------------------------------
# angular moment


def _poch(x: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= x + t
    return out


def _b_coefficient(alpha: int, l: int, m: int) -> Fraction:
    """B(alpha, l, m) exactly.

    The summand depends on (j_1..j_{2alpha}) only through per-index factors
    and the total J, so the nested sum is regrouped by J; the regrouping is
    exact in rational arithmetic.
    """
    top = l - m
    g = [Fraction(_poch(m - l, j) * _poch(m + l + 1, j), _poch(m + 1, j) * math.factorial(j))
         for j in range(top + 1)]
    conv = [Fraction(1)]
    for _ in range(2 * alpha):
        new = [Fraction(0)] * (len(conv) + top)
        for a_idx, ca in enumerate(conv):
            if ca:
                for b_idx, gb in enumerate(g):
                    new[a_idx + b_idx] += ca * gb
        conv = new
    total = Fraction(0)
    for J, cJ in enumerate(conv):
        total += Fraction(_poch(m * alpha + 1, J), _poch(2 * m * alpha + 2, J)) * cJ
    return Fraction(math.comb(l, l - m)) ** (2 * alpha) * total


def log_j2_moment(l: int, m: int, alpha: int) -> float:
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    alpha = _check_int_order(alpha, minimum=1)
    m = abs(m)
    B = _b_coefficient(alpha, l, m)
    if B <= 0:
        raise ArithmeticError("angular coefficient is not positive")
    lg = math.lgamma
    pre = ((2 * alpha * (2 * m - 1) + 2) * math.log(2.0) + alpha * math.log(2 * l + 1)
           + 2 * lg(m * alpha + 1) - (2 * alpha - 1) * math.log(math.pi) - lg(2 * m * alpha + 2))
    inner = (2 * lg(m + 0.5) + 2 * lg(m + 1) + lg(l - m + 1) + lg(l + m + 1)
             - 2 * lg(2 * m + 1) - 2 * lg(l + 1))
    return pre + alpha * inner + math.log(B.numerator) - math.log(B.denominator)


def j2_moment(l: int, m: int, alpha: int) -> float:
    """int |Y_lm|^{2 alpha} dOmega for integer alpha >= 1."""
    return math.exp(log_j2_moment(l, m, alpha))


# ---------------------------------------------------------------------------
# pseudoharmonic


def _log_a0_pho(n, L, alpha, policy):
    if (n + 1) ** (2 * alpha) > policy.term_cap:
        raise CombinatorialBudgetError(
            f"(n+1)^(2 alpha) = {(n + 1) ** (2 * alpha)} exceeds term_cap {policy.term_cap}")
    k = 2 * alpha
    return log_lauricella_a_coeff(0, alpha * L + 0.5, 0.0, [n] * k, [L + 0.5] * k, [1.0 / alpha] * k)


def log_moment_pho_closed(params: PseudoharmonicParams, qn: QuantumNumbers, alpha: int,
                          policy: TruncationPolicy | None = None):
    """(ln I^(alpha), diagnostics) for the pseudoharmonic density."""
    policy = policy or TruncationPolicy()
    alpha = _check_int_order(alpha)
    d = derive(params, qn.l)
    a, L, n = d.a, d.L, qn.n
    mu1 = alpha * L + 0.5
    sign, log_a0, diag = _log_a0_pho(n, L, alpha, policy)
    if sign < 0:
        raise ArithmeticError("A_0 came out negative")
    log_c = (1.5 * (alpha - 1) * math.log(a) + (alpha - 1) * math.log(2.0)
             + alpha * (math.lgamma(n + 1) - ln_gamma(n + L + 1.5)) - (mu1 + 1) * math.log(alpha))
    return log_c + log_a0 + log_j2_moment(qn.l, qn.m, alpha), diag


def renyi_pho_closed(params: PseudoharmonicParams, qn: QuantumNumbers, alpha: int,
                     policy: TruncationPolicy | None = None) -> MeasureValue:
    logi, diag = log_moment_pho_closed(params, qn, alpha, policy)
    val = logi / (1.0 - alpha)
    err = 64 * np.finfo(float).eps * max(abs(logi), 1.0) / abs(1.0 - alpha)
    return MeasureValue(val, "closed", err, diagnostics=diag)


# ---------------------------------------------------------------------------
# isospectral


def _kummer_log_weights(s: float, z0: float, z_hi: float) -> np.ndarray:
    """ln q_k with q_k = z0^k / (s+1)_k, truncated where negligible up to z_hi."""
    grow = math.log(max(z_hi / z0, 1.0))
    out = [0.0]
    k = 0
    while True:
        k += 1
        nxt = out[-1] + math.log(z0 / (s + k))
        out.append(nxt)
        if nxt + k * grow < _LOG_NEGLIGIBLE and math.log(z0 / (s + k)) + grow < 0:
            break
        if k > 10**6:
            raise ArithmeticError("Kummer weights failed to decay")
    return np.array(out)


def _taylor_coeffs(n: int, L: float, alpha: int, i: int, c: float):
    """Float Taylor coefficients at z = c of (L_n^{L+1/2})^{2a-i} (L_{n-1}^{L+3/2})^i."""
    deg = n * (2 * alpha - i) + (n - 1) * i
    dps = 40 + int(deg * math.log10(abs(c) + 2.0))
    with mpmath.workdps(dps):
        p1 = laguerre_coefficients(n, L + 0.5, exact=True)
        p2 = laguerre_coefficients(n - 1, L + 1.5, exact=True) if i else [mpmath.mpf(1)]
        poly = [mpmath.mpf(1)]
        for _ in range(2 * alpha - i):
            poly = _polymul(poly, p1)
        for _ in range(i):
            poly = _polymul(poly, p2)
        cm = mpmath.mpf(c)
        # Taylor shift: coefficient k = sum_d poly_d C(d,k) c^{d-k}
        out = []
        for k in range(len(poly)):
            acc = mpmath.mpf(0)
            for dd in range(k, len(poly)):
                acc += poly[dd] * mpmath.binomial(dd, k) * cm ** (dd - k)
            out.append(float(acc))
    return np.array(out)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _centered_expectation(coeffs: np.ndarray, kappa: np.ndarray, rate: float, c: float) -> np.ndarray:
    """E[Q(Z)] for Z ~ Gamma(kappa, rate), Q given by Taylor coefficients at c."""
    delta = kappa / rate - c
    m_prev = np.ones_like(kappa)
    total = coeffs[0] * m_prev
    if len(coeffs) == 1:
        return total
    m_cur = delta.copy()
    total = total + coeffs[1] * m_cur
    for k in range(1, len(coeffs) - 1):
        m_next = (delta + k / rate) * m_cur + (k * c / rate) * m_prev
        total = total + coeffs[k + 1] * m_next
        m_prev, m_cur = m_cur, m_next
    return total


def _log_binomial_tail(k: int, j: int, lnlam: float) -> float:
    """ln sum_{t>j} C(k+t-1, t) |lam|^{-t}."""
    terms = []
    t = j + 1
    while True:
        lt = ln_binomial(k + t - 1, t) - t * lnlam
        terms.append(lt)
        ratio = (k + t) / (t + 1.0) * math.exp(-lnlam)
        if ratio < 1.0 and lt - terms[0] < -40.0:
            break
        t += 1
    top = max(terms)
    return top + math.log(math.fsum(math.exp(v - top) for v in terms))


class _Conv:
    """Scaled j-fold self-convolution of the Kummer weights."""

    def __init__(self, logq: np.ndarray, M: int):
        self.shift = float(np.max(logq))
        self.q = np.exp(logq - self.shift)
        self.M = M
        self.arr = np.ones(1)
        self.log_scale = 0.0
        self.j = 0

    def step(self):
        a = np.convolve(self.arr, self.q)[: self.M]
        mx = float(np.max(a))
        a /= mx
        # drop entries that cannot matter for any weight in the window
        keep = np.nonzero(a > math.exp(_LOG_NEGLIGIBLE - 200.0))[0]
        a = a[: keep[-1] + 1]
        self.arr = a
        self.log_scale += math.log(mx) + self.shift
        self.j += 1
        return self.arr


def _iso_radial_series(n: int, L: float, alpha: int, lam: float, policy: TruncationPolicy):
    # independent of m, so angular siblings share one evaluation
    value, diag, info = _iso_radial_series_cached(n, L, alpha, lam, policy)
    return value, diag, dict(info)


@functools.lru_cache(maxsize=512)
def _iso_radial_series_cached(n: int, L: float, alpha: int, lam: float, policy: TruncationPolicy):
    """Signed log of the bracketed isospectral series for the radial moment.

    n = 0 returns sum_j (-1)^j C(2a+j-1, j) lam^{-j} T_j with
    T_j = int z^{aL+1/2} e^{-a z} P^j dz.

    n >= 1 returns the analogous double sum over the binomial index i of
    (L_n - h/(lam+P))^{2a} and the geometric index j of (lam+P)^{-i}.
    """
    s = L + 1.5
    mu1 = alpha * L + 0.5
    z0 = s
    mean = (mu1 + 1.0) / alpha
    z_hi = mean + 12.0 * math.sqrt(mu1 + 1.0) / alpha + 40.0 / alpha
    logq = _kummer_log_weights(s, z0, z_hi)
    lnlam = math.log(abs(lam))
    lam_neg = lam < 0
    lg_s1 = ln_gamma(s + 1.0)
    i_values = [0] if n == 0 else list(range(2 * alpha + 1))
    c_center = L + 0.5
    taylor = {} if n == 0 else {i: _taylor_coeffs(n, L, alpha, i, c_center) for i in i_values}
    ln_ng = 0.0 if n == 0 else math.log(n) + ln_gamma(s)

    M = max(4 * len(logq), 512)
    while True:
        conv = _Conv(logq, M)
        terms: list[tuple[int, float]] = []  # (sign, log|term|)
        shells = []
        hit_p_cap = False
        j = 0
        ref = None
        small_run = 0
        bound_rel = math.inf
        while True:
            if j == 0:
                arr, log_scale = np.ones(1), 0.0
            else:
                arr = conv.step()
                log_scale = conv.log_scale
            p = np.arange(arr.size, dtype=float)
            with np.errstate(divide="ignore"):
                log_arr = np.log(arr)
            shell = []
            for i in i_values:
                if n >= 1 and i == 0 and j > 0:
                    continue
                mu0 = mu1 + s * (i + j)
                rate = alpha + i + j
                kappa = mu0 + p + 1.0
                lw = log_arr + log_scale - p * math.log(z0) + gammaln(kappa) - kappa * math.log(rate)
                if n >= 1:
                    fval = _centered_expectation(taylor[i], kappa, rate, c_center)
                    with np.errstate(divide="ignore"):
                        lw = lw + np.log(np.abs(fval))
                    sgn_p = np.sign(fval)
                else:
                    sgn_p = np.ones_like(lw)
                finite = np.isfinite(lw)
                if not np.any(finite):
                    continue
                lmax = float(np.max(lw[finite]))
                # truncation check on the array end
                if arr.size >= M and lw[-1] > lmax - 45.0:
                    hit_p_cap = True
                part = math.fsum((sgn_p[finite] * np.exp(lw[finite] - lmax)).tolist())
                if part == 0.0:
                    continue
                # coefficient: (-1)^{i+j} C(2a, i) C(i+j-1, j) (n Gamma(s))^{-i} lam^{-i-j} Gamma(s+1)^{-j}
                if n == 0:
                    lcoef = ln_binomial(2 * alpha + j - 1, j)
                else:
                    lcoef = ln_binomial(2 * alpha, i) + (ln_binomial(i + j - 1, j) if i > 0 else 0.0)
                    lcoef -= i * ln_ng
                lcoef -= (i + j) * lnlam + j * lg_s1
                sign = (-1) ** (i + j)
                if lam_neg and (i + j) % 2 == 1:
                    sign = -sign
                sign *= 1 if part > 0 else -1
                shell.append((sign, lcoef + lmax + math.log(abs(part))))
            terms.extend(shell)
            if ref is None and shell:
                ref = max(t[1] for t in shell)
            if shell:
                shell_log = max(t[1] for t in shell)
                shells.append(shell_log - ref)
            else:
                shells.append(-math.inf)
            # remainder control
            if n == 0 and j >= 1 and shell:
                # T_k <= T_j for k > j, so the remainder is at most T_j times the
                # tail of the binomial series in 1/|lam|
                log_tj = shell_log - ln_binomial(2 * alpha + j - 1, j) + j * lnlam
                bound_rel = math.exp(log_tj - ref + _log_binomial_tail(2 * alpha, j, lnlam))
                if bound_rel <= policy.rel_tol:
                    break
            elif n >= 1 and j >= 2:
                last = shells[-3:]
                if all(v < math.log(policy.rel_tol) - 5.0 for v in last):
                    ratio = math.exp(min(shells[-1] - shells[-2], 0.0)) if shells[-2] > -math.inf else 0.0
                    ratio = min(ratio, 0.999)
                    bound_rel = math.exp(shells[-1]) * ratio / (1.0 - ratio)
                    break
            j += 1
            if j > policy.j_max:
                break
        if hit_p_cap and M < policy.p_max:
            M = min(2 * M, policy.p_max)
            continue
        break

    lmax = max(t[1] for t in terms)
    total = math.fsum(sgn * math.exp(lv - lmax) for sgn, lv in terms)
    magnitude = math.fsum(math.exp(lv - lmax) for _, lv in terms)
    if total <= 0:
        raise ArithmeticError("isospectral series sum is not positive")
    truncated = j > policy.j_max or hit_p_cap
    ratio = magnitude / total
    # bound_rel is relative to the leading shell; convert to the total
    rel_bound = bound_rel * math.exp(ref - lmax) / total if math.isfinite(bound_rel) else math.inf
    diag = SeriesDiagnostics(
        terms_used=len(terms),
        last_term_magnitude=math.exp(max(shells[-1], -745.0) + ref - lmax) / total,
        truncation_flag=truncated,
        extended_precision=n >= 1,
        cancellation_ratio=ratio,
    )
    info = {"shells": j + 1, "array_length": M, "rel_truncation_bound": rel_bound}
    return lmax + math.log(total), diag, info


def log_moment_iso_closed(params: PseudoharmonicParams, qn: QuantumNumbers, lam: float,
                          alpha: int, policy: TruncationPolicy | None = None):
    """(ln I^(alpha), diagnostics, info) for the isospectral density."""
    policy = policy or TruncationPolicy()
    alpha = _check_int_order(alpha)
    lam = check_lambda(lam)
    d = derive(params, qn.l)
    a, L, n = d.a, d.L, qn.n
    s = L + 1.5
    log_series, diag, info = _iso_radial_series(n, L, alpha, lam, policy)
    if n == 0:
        pre = ((alpha - 1) * (math.log(2.0) + 1.5 * math.log(a))
               + alpha * math.log((lam + 1.0) / lam) - alpha * ln_gamma(s))
    else:
        lk = math.log(2.0) + 1.5 * math.log(a) + math.lgamma(n + 1) - ln_gamma(n + s)
        pre = alpha * lk - math.log(2.0) - 1.5 * math.log(a)
    return pre + log_series + log_j2_moment(qn.l, qn.m, alpha), diag, info


def renyi_iso_closed(params: PseudoharmonicParams, qn: QuantumNumbers, lam: float, alpha: int,
                     policy: TruncationPolicy | None = None) -> MeasureValue:
    logi, diag, info = log_moment_iso_closed(params, qn, lam, alpha, policy)
    k = 1.0 / (1.0 - alpha)
    err = abs(k) * (info["rel_truncation_bound"] + 1e-14 * diag.cancellation_ratio)
    return MeasureValue(k * logi, "closed", err, diagnostics=diag,
                        converged=not diag.truncation_flag, notes=info)


# ---------------------------------------------------------------------------
# ratios


def _renyi(system, params, qn, lam, order, policy):
    if system == "pho":
        return renyi_pho_closed(params, qn, order, policy)
    return renyi_iso_closed(params, qn, lam, order, policy)


def _compose(num: MeasureValue, den: MeasureValue) -> MeasureValue:
    v = math.exp(num.value - den.value)
    return MeasureValue(v, "closed", v * (num.abs_error_estimate + den.abs_error_estimate),
                        converged=num.converged and den.converged)


def _iso_series_value(params, qn, lam, order, policy):
    """The bracketed n = 0 series including the angular moment, as printed."""
    d = derive(params, qn.l)
    log_series, _, _ = _iso_radial_series(0, d.L, order, lam, policy)
    return log_series + log_j2_moment(qn.l, qn.m, order)


def _printed_rcr_n0(params, qn, lam, alpha, beta, policy) -> float:
    """Literal transcription of the n = 0 iso-over-pho ratio (log value)."""
    d = derive(params, qn.l)
    a, L = d.a, d.L
    l, m = qn.l, abs(qn.m)
    lg = math.lgamma
    ea, eb = 1.0 / (1.0 - alpha), 1.0 / (1.0 - beta)
    log_x = (math.log(2.0 * math.sqrt(a) * (2 * l + 1)) + 2 * lg(m + 0.5) + 2 * lg(m + 1)
             + lg(l - m + 1) + lg(l + m + 1) - ln_gamma(L + 1.5) - 2 * lg(2 * m + 1) - 2 * lg(l + 1))
    mu1p = beta * L + 0.5
    _, log_a0p, _ = _log_a0_pho(0, L, beta, policy)
    B_a = _b_coefficient(alpha, l, m)
    B_b = _b_coefficient(beta, l, m)
    log_ba = math.log(B_a.numerator) - math.log(B_a.denominator)
    log_bb = math.log(B_b.numerator) - math.log(B_b.denominator)
    # series without the angular moment
    log_s = _iso_radial_series(0, L, alpha, lam, policy)[0]
    out = alpha * ea * math.log((lam + 1.0) / lam)
    out += (alpha * ea - 2.0 * beta * eb) * log_x
    out += ((alpha * (4 * m - 2) + 1) * ea - (beta * (4 * m - 2) + 1) * eb) * math.log(2.0)
    out += (mu1p + 1.0) * eb * math.log(beta)
    out += ((2 * alpha - 3) / (2 - 2 * alpha) - (2 * beta - 1) / (2 - 2 * beta)) * math.log(a)
    out += 2 * alpha * ea * lg(m * alpha + 1) + eb * lg(2 * m * beta + 2) + ea * log_ba
    out -= eb * log_a0p
    out -= ((2 * alpha - 1) * ea - (2 * beta - 1) * eb) * math.log(math.pi)
    out -= 2 * beta * eb * lg(m * beta + 1) + ea * lg(2 * m * alpha + 2) + eb * log_bb
    out += ea * log_s
    return out


def rcr_closed(params: PseudoharmonicParams, qn: QuantumNumbers, lam: float, alpha: int,
               beta: int, direction: str = "iso_over_pho",
               policy: TruncationPolicy | None = None) -> MeasureValue:
    """Closed-form RCR in one of four numerator/denominator combinations.

    The value is always the entropy-difference composition.  For the n = 0
    iso-over-pho case the literal printed expression is also evaluated and
    its relative discrepancy reported in ``notes``.
    """
    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be one of {DIRECTIONS}")
    alpha = _check_int_order(alpha)
    beta = _check_int_order(beta, "beta")
    num_sys, den_sys = direction.split("_over_")
    if "iso" in (num_sys, den_sys):
        lam = check_lambda(lam)
    num = _renyi(num_sys, params, qn, lam, alpha, policy)
    den = _renyi(den_sys, params, qn, lam, beta, policy)
    out = _compose(num, den)
    notes = {"direction": direction}
    if direction == "iso_over_pho" and qn.n == 0:
        printed = _printed_rcr_n0(params, qn, lam, alpha, beta, policy or TruncationPolicy())
        disc = math.expm1(printed - math.log(out.value))
        notes.update(printed_log=printed, printed_rel_discrepancy=disc)
        if abs(disc) > 1e-7:
            log.debug("printed n=0 ratio differs from the composed value by %.3e (rel)", disc)
    return MeasureValue(out.value, "closed", out.abs_error_estimate, converged=out.converged,
                        notes=notes)


def _printed_grc_pho(params, qn, alpha, beta, policy) -> float:
    d = derive(params, qn.l)
    a, L, n = d.a, d.L, qn.n
    ea, eb = 1.0 / (1.0 - alpha), 1.0 / (1.0 - beta)
    mu1, mu1p = alpha * L + 0.5, beta * L + 0.5
    _, la0, _ = _log_a0_pho(n, L, alpha, policy)
    _, lb0, _ = _log_a0_pho(n, L, beta, policy)
    lx = math.log(2.0 * math.sqrt(a)) + math.lgamma(n + 1) - ln_gamma(L + 1.5)
    half = math.log(math.sqrt(a) / 2.0)
    out = (alpha * ea - beta * eb) * lx
    out += (mu1p + 1.0) * eb * math.log(beta) - (mu1 + 1.0) * ea * math.log(alpha)
    out += ea * (half + la0 + log_j2_moment(qn.l, qn.m, alpha))
    out -= eb * (half + lb0 + log_j2_moment(qn.l, qn.m, beta))
    return out


def _printed_grc_iso_n0(params, qn, lam, alpha, beta, policy) -> float:
    d = derive(params, qn.l)
    a, L = d.a, d.L
    ea, eb = 1.0 / (1.0 - alpha), 1.0 / (1.0 - beta)
    lx = math.log(2.0 * math.sqrt(a)) + math.log((lam + 1.0) / lam) - ln_gamma(L + 1.5)
    sa = _iso_series_value(params, qn, lam, alpha, policy)
    sb = _iso_series_value(params, qn, lam, beta, policy)
    out = (alpha * ea - beta * eb) * lx + ea * sa
    out -= (eb - ea) * math.log(1.0 / (2.0 * math.sqrt(a))) + eb * sb
    return out


def grc_closed(params: PseudoharmonicParams, qn: QuantumNumbers, alpha: int, beta: int,
               lam: float | None = None, policy: TruncationPolicy | None = None) -> MeasureValue:
    """Generalized Renyi complexity of the pseudoharmonic (lam None) or isospectral state."""
    alpha = _check_int_order(alpha)
    beta = _check_int_order(beta, "beta")
    system = "pho" if lam is None else "iso"
    if alpha == beta:
        return MeasureValue(1.0, "closed", 0.0, notes={"system": system})
    out = _compose(_renyi(system, params, qn, lam, alpha, policy),
                   _renyi(system, params, qn, lam, beta, policy))
    notes = {"system": system}
    pol = policy or TruncationPolicy()
    printed = None
    if system == "pho":
        printed = _printed_grc_pho(params, qn, alpha, beta, pol)
    elif qn.n == 0:
        printed = _printed_grc_iso_n0(params, qn, lam, alpha, beta, pol)
    if printed is not None:
        disc = math.expm1(printed - math.log(out.value))
        notes.update(printed_log=printed, printed_rel_discrepancy=disc)
        if abs(disc) > 1e-7:
            log.debug("printed GRC differs from the composed value by %.3e (rel)", disc)
    return MeasureValue(out.value, "closed", out.abs_error_estimate, converged=out.converged,
                        notes=notes)


def src_closed(params: PseudoharmonicParams, qn: QuantumNumbers, alpha: int,
               lam: float | None = None, policy: TruncationPolicy | None = None) -> MeasureValue:
    return grc_closed(params, qn, alpha, 2, lam, policy)
