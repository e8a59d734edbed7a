"""Special-function kernels: log-gamma, incomplete gamma, Laguerre and
Legendre polynomials, and the terminating Lauricella coefficient A_p.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

__all__ = [
    "DomainError",
    "SeriesDiagnostics",
    "ln_gamma",
    "ln_binomial",
    "regularized_lower_gamma",
    "regularized_upper_gamma",
    "upper_incomplete_gamma",
    "gamma_density_log",
    "assoc_laguerre",
    "laguerre_coefficients",
    "assoc_legendre_abs",
    "lauricella_a_coeff",
    "log_lauricella_a_coeff",
    "CANCELLATION_RATIO",
]

# Partial sums larger than this multiple of the result trigger an
# extended-precision recomputation.
CANCELLATION_RATIO = 1e6

_GAMMA_TOL = 1e-15
_GAMMA_MAXITER = 100_000
_TINY = 1e-300


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class SeriesDiagnostics:
    """Bookkeeping for a (possibly truncated) series evaluation."""

    terms_used: int
    last_term_magnitude: float
    truncation_flag: bool = False
    extended_precision: bool = False
    cancellation_ratio: float = 1.0

    def __post_init__(self):
        if self.last_term_magnitude < 0:
            raise ValueError("last_term_magnitude must be nonnegative")


def ln_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def ln_binomial(top: float, bottom: float) -> float:
    """ln C(top, bottom) for real arguments with top-bottom > -1, bottom > -1."""
    return ln_gamma(top + 1.0) - ln_gamma(bottom + 1.0) - ln_gamma(top - bottom + 1.0)


def _check_gamma_args(s: float, x: float) -> None:
    if not s > 0:
        raise DomainError(f"incomplete gamma requires s > 0, got {s!r}")
    if not x >= 0:
        raise DomainError(f"incomplete gamma requires x >= 0, got {x!r}")


def gamma_density_log(s: float, x: float) -> float:
    """ln(x^s e^{-x} / Γ(s)), the common prefactor of P(s,x) and Q(s,x)."""
    if x == 0.0:
        return -math.inf
    return s * math.log(x) - x - ln_gamma(s)


def _lower_series(s: float, x: float) -> float:
    # P(s,x) = x^s e^{-x}/Γ(s+1) * sum_k x^k/((s+1)...(s+k))
    term = 1.0 / s
    total = term
    for k in range(1, _GAMMA_MAXITER):
        term *= x / (s + k)
        total += term
        if term < total * _GAMMA_TOL:
            break
    else:
        raise ArithmeticError(f"lower gamma series did not converge for s={s}, x={x}")
    return total * math.exp(gamma_density_log(s, x))


def _upper_continued_fraction(s: float, x: float) -> float:
    # Modified Lentz evaluation of the Legendre continued fraction for Q(s,x).
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAXITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_TOL:
            break
    else:
        raise ArithmeticError(f"upper gamma fraction did not converge for s={s}, x={x}")
    return math.exp(gamma_density_log(s, x)) * h


def _gamma_pq(s: float, x: float) -> tuple[float, float]:
    _check_gamma_args(s, x)
    if x == 0.0:
        return 0.0, 1.0
    if x < s + 1.0:
        p = _lower_series(s, x)
        return p, 1.0 - p
    q = _upper_continued_fraction(s, x)
    return 1.0 - q, q


def regularized_lower_gamma(s: float, x: float) -> float:
    """P(s, x) = γ(s, x)/Γ(s).

    Series for x < s+1, continued fraction otherwise.
    """
    return _gamma_pq(s, x)[0]


def regularized_upper_gamma(s: float, x: float) -> float:
    """Q(s, x) = Γ(s, x)/Γ(s) = 1 - P(s, x), accurate in the tail."""
    return _gamma_pq(s, x)[1]


def upper_incomplete_gamma(s: float, x: float) -> float:
    """Γ(s, x) (not regularized)."""
    return regularized_upper_gamma(s, x) * math.exp(ln_gamma(s))


def assoc_laguerre(n: int, k: float, x):
    """Associated Laguerre polynomial L_n^k(x) via the three-term recurrence.

    Accepts scalar or array ``x``.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    if not k > -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {k!r}")
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else float(x)
    prev = x * 0.0 + 1.0
    if n == 0:
        return prev
    cur = 1.0 + k - x
    for j in range(1, int(n)):
        prev, cur = cur, ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1)
    return cur


def laguerre_coefficients(n: int, k, *, exact: bool = False) -> list:
    """Monomial coefficients c_d of L_n^k(z) = sum_d c_d z^d.

    With ``exact=True`` the coefficients are mpmath numbers at the current
    working precision.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if exact:
        k = mpmath.mpf(k)
        c0 = mpmath.binomial(n + k, n)
    else:
        c0 = math.exp(ln_binomial(n + k, n))
    coeffs = [c0]
    for d in range(n):
        # ratio c_{d+1}/c_d = -(n-d) / ((d+1)(k+d+1))
        coeffs.append(-coeffs[-1] * (n - d) / ((d + 1) * (k + d + 1)))
    return coeffs


def assoc_legendre_abs(ell: int, m: int, x):
    """|P_ell^{|m|}(x)| on [-1, 1]; the phase convention never matters here."""
    if ell < 0 or int(ell) != ell:
        raise DomainError(f"ell must be a nonnegative integer, got {ell!r}")
    m = abs(int(m))
    if m > ell:
        raise DomainError(f"|m| must not exceed ell (ell={ell}, m={m})")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("Legendre argument must lie in [-1, 1]")
    somx2 = np.sqrt(np.clip((1.0 - x) * (1.0 + x), 0.0, None))
    pmm = np.ones_like(x)
    fact = 1.0
    for _ in range(m):
        pmm = pmm * fact * somx2
        fact += 2.0
    if ell == m:
        out = pmm
    else:
        pmmp1 = x * (2 * m + 1) * pmm
        if ell == m + 1:
            out = pmmp1
        else:
            for ll in range(m + 2, ell + 1):
                pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
                pmm, pmmp1 = pmmp1, pll
            out = pmmp1
    out = np.abs(out)
    return float(out) if scalar else out


def _lauricella_checks(p, degrees, params, args):
    if p < 0 or int(p) != p:
        raise ValueError("p must be a nonnegative integer")
    if not degrees:
        raise ValueError("degrees must be nonempty")
    if not (len(degrees) == len(params) == len(args)):
        raise ValueError("degrees, params and args must have equal length")
    for m in degrees:
        if m < 0 or int(m) != m:
            raise ValueError("degrees must be nonnegative integers")
    for a in params:
        if not a > -1:
            raise ValueError("parameters must exceed -1")


def _fa_terms_float(p, top, beta, degrees, params, args):
    """Terms of the terminating F_A sum in nested (j_1, ..., j_s, q) order."""
    factors = []
    for m, a, t in zip(degrees, params, args):
        g = [1.0]
        for j in range(m):
            g.append(g[-1] * (j - m) * t / ((a + 1 + j) * (j + 1)))
        factors.append(g)
    last = [1.0]
    for q in range(p):
        last.append(last[-1] * (q - p) / ((beta + 1 + q) * (q + 1)))
    poch = [1.0]
    for k in range(sum(degrees) + p):
        poch.append(poch[-1] * (top + k))
    terms = []
    for idx in itertools.product(*(range(m + 1) for m in degrees)):
        prod = 1.0
        for g, j in zip(factors, idx):
            prod *= g[j]
        jsum = sum(idx)
        for q in range(p + 1):
            terms.append(poch[jsum + q] * prod * last[q])
    return terms


def _fa_terms_mp(p, top, beta, degrees, params, args):
    top = mpmath.mpf(top)
    beta = mpmath.mpf(beta)
    factors = []
    for m, a, t in zip(degrees, params, args):
        a = mpmath.mpf(a)
        t = mpmath.mpf(t)
        g = [mpmath.mpf(1)]
        for j in range(m):
            g.append(g[-1] * (j - m) * t / ((a + 1 + j) * (j + 1)))
        factors.append(g)
    last = [mpmath.mpf(1)]
    for q in range(p):
        last.append(last[-1] * (q - p) / ((beta + 1 + q) * (q + 1)))
    poch = [mpmath.mpf(1)]
    for k in range(sum(degrees) + p):
        poch.append(poch[-1] * (top + k))
    terms = []
    for idx in itertools.product(*(range(m + 1) for m in degrees)):
        prod = mpmath.mpf(1)
        for g, j in zip(factors, idx):
            prod *= g[j]
        jsum = sum(idx)
        for q in range(p + 1):
            terms.append(poch[jsum + q] * prod * last[q])
    return terms


def log_lauricella_a_coeff(
    p: int,
    mu: float,
    beta: float,
    degrees: Sequence[int],
    params: Sequence[float],
    args: Sequence[float],
) -> tuple[int, float, SeriesDiagnostics]:
    """Log-space A_p(mu, beta, s, {m_i}, {a_i}, {t_i}).

    A_p = (beta+1)_mu * prod_i C(m_i + a_i, m_i)
          * F_A(mu+beta+1; -m_1..-m_s, -p; a_1+1..a_s+1, beta+1; t_1..t_s, 1)

    The F_A series terminates because every numerator parameter except the
    first is a nonpositive integer; it is summed by direct nested enumeration.
    Returns ``(sign, ln|A_p|, diagnostics)``.
    """
    _lauricella_checks(p, degrees, params, args)
    degrees = [int(m) for m in degrees]
    p = int(p)
    top = mu + beta + 1.0
    log_prefactor = ln_gamma(beta + 1.0 + mu) - ln_gamma(beta + 1.0)
    for m, a in zip(degrees, params):
        log_prefactor += ln_binomial(m + a, m)

    terms = _fa_terms_float(p, top, beta, degrees, params, args)
    total = math.fsum(terms)
    magnitude = math.fsum(abs(t) for t in terms)
    finite = math.isfinite(total) and math.isfinite(magnitude)
    ratio = magnitude / abs(total) if finite and total != 0.0 else math.inf
    extended = False
    if ratio > CANCELLATION_RATIO:
        extended = True
        # The float ratio is itself unreliable under severe cancellation, so
        # raise the precision until the digits lost are comfortably covered.
        digits = 30 + (int(math.log10(ratio)) if math.isfinite(ratio) else 60)
        for _ in range(8):
            with mpmath.workdps(digits):
                mterms = _fa_terms_mp(p, top, beta, degrees, params, args)
                mtotal = mpmath.fsum(mterms)
                mmag = mpmath.fsum(abs(t) for t in mterms)
                if mtotal != 0:
                    lost = float(mpmath.log10(mmag / abs(mtotal)))
                    if digits >= lost + 25:
                        ratio = float(mmag / abs(mtotal))
                        sign = 1 if mtotal > 0 else -1
                        log_sum = float(mpmath.log(abs(mtotal)))
                        last = float(abs(mterms[-1]))
                        break
                    digits = int(lost) + 40
                else:
                    digits *= 2
        else:
            raise ArithmeticError("Lauricella sum did not stabilize in extended precision")
    else:
        if total == 0.0:
            raise ArithmeticError("Lauricella sum vanished")
        sign = 1 if total > 0 else -1
        log_sum = math.log(abs(total))
        last = abs(terms[-1])
    diag = SeriesDiagnostics(
        terms_used=len(terms),
        last_term_magnitude=last,
        truncation_flag=False,
        extended_precision=extended,
        cancellation_ratio=ratio,
    )
    return sign, log_prefactor + log_sum, diag


def lauricella_a_coeff(
    p: int,
    mu: float,
    beta: float,
    degrees: Sequence[int],
    params: Sequence[float],
    args: Sequence[float],
) -> float:
    """A_p as a float; raises OverflowError instead of saturating.

    Use :func:`log_lauricella_a_coeff` when the value may not fit a double.
    """
    sign, log_abs, _ = log_lauricella_a_coeff(p, mu, beta, degrees, params, args)
    if log_abs > math.log(np.finfo(float).max):
        raise OverflowError(f"A_p magnitude exp({log_abs:.6g}) exceeds float range")
    return sign * math.exp(log_abs)
