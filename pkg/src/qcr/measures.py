"""Order-alpha information measures and complexity ratios.

Quantum densities are integrated numerically (the reference oracle).
Piecewise-constant densities from :mod:`qcr.densitylab` are dispatched to
their exact evaluators through the ``log_entropic_moment_exact`` /
``shannon_exact`` hooks, so every function here accepts either kind.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .specfun import DomainError, SeriesDiagnostics, ln_gamma

__all__ = [
    "MeasureValue",
    "QuadratureWarning",
    "entropic_moment",
    "log_entropic_moment",
    "renyi",
    "shannon",
    "tsallis",
    "tsallis_from_renyi",
    "renyi_from_tsallis",
    "renyi_length",
    "disequilibrium",
    "rcr",
    "grc",
    "src",
    "lmc",
    "structural_entropy",
    "bound_b",
    "sup_norm",
    "second_moment",
    "rcr_upper_bound",
]

log = logging.getLogger(__name__)

REL_TOL = 1e-10
ABS_FLOOR = 1e-14
ANGULAR_TOL = 1e-11
_QUAD_EPSREL = 1e-12
# Integrand cut-off below the peak, in natural-log units.
_LOG_WINDOW = 80.0
_COARSE_POINTS = 320


class QuadratureWarning(UserWarning):
    pass


@dataclass(frozen=True)
class MeasureValue:
    value: float
    method: str
    abs_error_estimate: float = 0.0
    diagnostics: SeriesDiagnostics | None = None
    converged: bool = True
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.abs_error_estimate >= 0:
            raise ValueError("abs_error_estimate must be nonnegative")
        if self.method not in ("quadrature", "closed", "exact"):
            raise ValueError(f"unknown method tag {self.method!r}")

    def __float__(self):
        return float(self.value)


def _check_order(alpha) -> float:
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"order must be a positive finite real, got {alpha!r}")
    return alpha


def _is_exact(rho) -> bool:
    return hasattr(rho, "log_entropic_moment_exact")


# ---------------------------------------------------------------------------
# radial and angular quadrature


def _radial_window(rho):
    """Cached (lo, hi, interior_points) bracketing the radial bulk of rho."""
    cache = rho.meta.setdefault("_window", {})
    if "w" in cache:
        return cache["w"]
    if rho.radial_support is not None:
        pts = tuple(b for b in rho.radial_breakpoints if 0 < b < rho.radial_support)
        w = (0.0, float(rho.radial_support), pts)
        cache["w"] = w
        return w
    rmax = 12.0 * rho.radial_tail_scale
    grid = np.linspace(0.0, rmax, _COARSE_POINTS + 1)[1:]
    # alpha = 1 profile; higher orders only narrow the bulk
    with np.errstate(divide="ignore", invalid="ignore"):
        g = rho.log_radial(grid) + 2.0 * np.log(grid)
    g = np.where(np.isfinite(g), g, -np.inf)
    peak = np.max(g)
    keep = np.nonzero(g > peak - _LOG_WINDOW)[0]
    step = grid[1] - grid[0]
    lo = max(0.0, grid[keep[0]] - 2 * step)
    hi = min(rmax, grid[keep[-1]] + 2 * step)
    pts = tuple(np.linspace(lo, hi, 10)[1:-1])
    w = (lo, hi, pts)
    cache["w"] = w
    return w


def _quad_pieces(fun, lo, hi, pts):
    edges = [lo, *pts, hi]
    vals, errs = [], []
    ok = True
    for a, b in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                v, e = integrate.quad(fun, a, b, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=200)
            except integrate.IntegrationWarning:
                ok = False
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                v, e = integrate.quad(fun, a, b, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=400)
                e = max(e, abs(v) * 1e-8)
        vals.append(v)
        errs.append(e)
    return math.fsum(vals), math.fsum(errs), ok


def _radial_log_moment(rho, alpha):
    """ln int R(r)^alpha r^2 dr with its relative error estimate."""
    lo, hi, pts = _radial_window(rho)
    grid = np.linspace(lo, hi, 65)[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        g = alpha * rho.log_radial(grid) + 2.0 * np.log(grid)
    shift = float(np.max(g[np.isfinite(g)]))

    def integrand(r):
        if r <= 0.0:
            return 0.0
        v = alpha * float(rho.log_radial(r)) + 2.0 * math.log(r) - shift
        return math.exp(v) if v > -745.0 else 0.0

    val, err, ok = _quad_pieces(integrand, lo, hi, pts)
    if val <= 0:
        raise ArithmeticError("radial entropic moment vanished")
    return shift + math.log(val), err / val, ok


def _radial_shannon(rho):
    lo, hi, pts = _radial_window(rho)

    def integrand(r):
        if r <= 0.0:
            return 0.0
        lr = float(rho.log_radial(r))
        if not math.isfinite(lr):
            return 0.0
        return -math.exp(lr) * lr * r * r

    val, err, ok = _quad_pieces(integrand, lo, hi, pts)
    return val, err, ok


def _angular_integral(func, tol=ANGULAR_TOL):
    """2 pi int_{-1}^{1} func(x) dx by Gauss-Legendre, doubling the order."""
    prev = None
    order = 64
    while order <= 1024:
        x, w = np.polynomial.legendre.leggauss(order)
        cur = 2.0 * math.pi * float(np.dot(w, func(x)))
        if prev is not None and abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return cur, abs(cur - prev), order
        prev = cur
        order *= 2
    v, e = integrate.quad(lambda t: float(func(np.array([t]))[0]), -1.0, 1.0,
                          epsabs=0.0, epsrel=1e-12, limit=400)
    return 2.0 * math.pi * v, 2.0 * math.pi * e, -1


def _angular_log_moment(rho, alpha):
    cache = rho.meta.setdefault("_angular", {})
    key = ("mom", alpha)
    if key not in cache:
        def f(x):
            return np.power(rho.angular(x), alpha)
        v, e, _ = _angular_integral(f)
        cache[key] = (math.log(v), e / v)
    return cache[key]


def _angular_shannon(rho):
    def f(x):
        y = rho.angular(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(y > 0, -y * np.log(np.where(y > 0, y, 1.0)), 0.0)
        return out

    v, e, _ = _angular_integral(f)
    return v, e


def _generic_log_moment(rho, alpha):
    """Non-separable densities: nested radial quad over an angular rule."""
    x, w = np.polynomial.legendre.leggauss(64)
    theta = np.arccos(x)
    nphi = 1 if rho.phi_uniform else 64
    phis = np.linspace(0.0, 2 * math.pi, nphi, endpoint=False)

    def shell(r):
        tot = 0.0
        for ph in phis:
            vals = np.asarray(rho.evaluator(np.full_like(theta, r), theta, ph), dtype=float)
            tot += float(np.dot(w, np.power(vals, alpha)))
        return tot * 2.0 * math.pi / nphi * r * r

    hi = rho.radial_support if rho.radial_support is not None else 12.0 * rho.radial_tail_scale
    pts = tuple(b for b in rho.radial_breakpoints if 0 < b < hi)
    val, err, ok = _quad_pieces(shell, 0.0, hi, pts)
    return math.log(val), err / val, ok


def log_entropic_moment(rho, alpha) -> MeasureValue:
    """ln I^(alpha) as a MeasureValue (error estimate is absolute in the log)."""
    alpha = _check_order(alpha)
    if _is_exact(rho):
        return MeasureValue(rho.log_entropic_moment_exact(alpha), "exact", 0.0)
    if rho.separable:
        lr, er, ok_r = _radial_log_moment(rho, alpha)
        la, ea = _angular_log_moment(rho, alpha)
        val, err, ok = lr + la, er + ea, ok_r
    else:
        val, err, ok = _generic_log_moment(rho, alpha)
    if not ok:
        warnings.warn(f"quadrature did not fully converge for {rho.label}", QuadratureWarning)
    return MeasureValue(val, "quadrature", max(err, 1e-15), converged=ok)


def entropic_moment(rho, alpha) -> MeasureValue:
    """I^(alpha) = int rho^alpha dV."""
    lm = log_entropic_moment(rho, alpha)
    v = math.exp(lm.value)
    notes = {}
    if lm.method == "quadrature" and getattr(rho, "separable", False):
        norm = math.exp(log_entropic_moment(rho, 1.0).value) if alpha != 1.0 else v
        notes["normalization"] = norm
    return MeasureValue(v, lm.method, v * lm.abs_error_estimate, converged=lm.converged, notes=notes)


def shannon(rho) -> MeasureValue:
    if _is_exact(rho):
        return MeasureValue(rho.shannon_exact(), "exact", 0.0)
    if not rho.separable:
        raise NotImplementedError("Shannon entropy of a non-separable density")
    vr, er, ok = _radial_shannon(rho)
    va, ea = _angular_shannon(rho)
    return MeasureValue(vr + va, "quadrature", er + ea, converged=ok)


def renyi(rho, alpha) -> MeasureValue:
    """Renyi entropy; alpha = 1 is the Shannon branch, never a limit."""
    alpha = _check_order(alpha)
    if alpha == 1.0:
        return shannon(rho)
    lm = log_entropic_moment(rho, alpha)
    k = 1.0 / (1.0 - alpha)
    return MeasureValue(k * lm.value, lm.method, abs(k) * lm.abs_error_estimate,
                        converged=lm.converged)


def tsallis(rho, alpha) -> MeasureValue:
    alpha = _check_order(alpha)
    if alpha == 1.0:
        return shannon(rho)
    im = entropic_moment(rho, alpha)
    return MeasureValue((1.0 - im.value) / (alpha - 1.0), im.method,
                        im.abs_error_estimate / abs(alpha - 1.0), converged=im.converged)


def tsallis_from_renyi(R: float, alpha: float) -> float:
    alpha = _check_order(alpha)
    if alpha == 1.0:
        raise DomainError("conversion is singular at alpha = 1; both reduce to Shannon")
    return -math.expm1((1.0 - alpha) * R) / (alpha - 1.0)


def renyi_from_tsallis(T: float, alpha: float) -> float:
    alpha = _check_order(alpha)
    if alpha == 1.0:
        raise DomainError("conversion is singular at alpha = 1; both reduce to Shannon")
    return math.log1p((1.0 - alpha) * T) / (1.0 - alpha)


def renyi_length(rho, alpha) -> MeasureValue:
    r = renyi(rho, alpha)
    v = (3.0 / (4.0 * math.pi)) ** (1.0 / 3.0) * math.exp(r.value / 3.0)
    return MeasureValue(v, r.method, v * r.abs_error_estimate / 3.0, converged=r.converged)


def disequilibrium(rho) -> MeasureValue:
    r = renyi(rho, 2.0)
    v = math.exp(-r.value)
    return MeasureValue(v, r.method, v * r.abs_error_estimate, converged=r.converged)


def _ratio(rf: MeasureValue, rg: MeasureValue) -> MeasureValue:
    v = math.exp(rf.value - rg.value)
    method = rf.method if rf.method == rg.method else "quadrature"
    return MeasureValue(v, method, v * (rf.abs_error_estimate + rg.abs_error_estimate),
                        converged=rf.converged and rg.converged)


def rcr(f, g, alpha, beta) -> MeasureValue:
    """Renyi complexity ratio exp(R_f^(alpha) - R_g^(beta))."""
    return _ratio(renyi(f, alpha), renyi(g, beta))


def grc(rho, alpha, beta) -> MeasureValue:
    return rcr(rho, rho, alpha, beta)


def src(rho, alpha) -> MeasureValue:
    return grc(rho, alpha, 2.0)


def lmc(rho) -> MeasureValue:
    return grc(rho, 1.0, 2.0)


def structural_entropy(rho) -> MeasureValue:
    """R^(1) - R^(2), i.e. ln of the LMC-type ratio."""
    a, b = renyi(rho, 1.0), renyi(rho, 2.0)
    return MeasureValue(a.value - b.value, a.method, a.abs_error_estimate + b.abs_error_estimate,
                        converged=a.converged and b.converged)


# ---------------------------------------------------------------------------
# bounds


def bound_b(D: int, alpha) -> float:
    """Maximum-entropy constant B_D(alpha) at unit second moment per dimension."""
    alpha = _check_order(alpha)
    if int(D) != D or D < 1:
        raise DomainError("D must be a positive integer")
    if alpha <= D / (D + 2.0):
        raise DomainError(f"B_D(alpha) requires alpha > D/(D+2), got {alpha}")
    if alpha == 1.0:
        return 0.5 * D * math.log(2.0 * math.pi * math.e)
    w = (2.0 + D) * alpha - D
    if alpha < 1.0:
        return (0.5 * D * math.log(math.pi * w / (1.0 - alpha))
                - alpha / (1.0 - alpha) * math.log(w / (2.0 * alpha))
                - (ln_gamma(alpha / (1.0 - alpha)) - ln_gamma(w / (2.0 * (1.0 - alpha)))))
    return (0.5 * D * math.log(math.pi * w / (alpha - 1.0))
            + alpha / (alpha - 1.0) * math.log(w / (2.0 * alpha))
            + (ln_gamma(alpha / (alpha - 1.0)) - ln_gamma(w / (2.0 * (alpha - 1.0)))))


def _golden_max(func, lo, hi, n=400):
    grid = np.linspace(lo, hi, n)
    vals = np.array([func(t) for t in grid])
    k = int(np.argmax(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, n - 1)]
    if b <= a:
        return float(vals[k])
    res = optimize.minimize_scalar(lambda t: -func(t), bounds=(a, b), method="bounded",
                                   options={"xatol": 1e-12 * max(abs(b), 1.0)})
    return max(float(vals[k]), -float(res.fun))


def sup_norm(rho) -> tuple[float, bool]:
    """(sup rho, approximate?); exact for step densities or when sup_hint is set."""
    if _is_exact(rho):
        return float(rho.sup_exact()), False
    if rho.sup_hint is not None:
        return float(rho.sup_hint), False
    if not rho.separable:
        raise NotImplementedError("sup norm of a non-separable density")
    lo, hi, _ = _radial_window(rho)
    rmax = _golden_max(lambda r: math.exp(float(rho.log_radial(r))) if r > 0 else 0.0, lo, hi)
    amax = _golden_max(lambda x: float(rho.angular(np.array([x]))[0]), -1.0, 1.0)
    return rmax * amax, True


def second_moment(rho) -> float:
    """<r^2> of a density (radial quadrature, or exact for step densities)."""
    if _is_exact(rho):
        return float(rho.second_moment_exact())
    lo, hi, pts = _radial_window(rho)

    def integrand(r):
        if r <= 0:
            return 0.0
        lr = float(rho.log_radial(r))
        return math.exp(lr) * r**4 if math.isfinite(lr) else 0.0

    v, _, _ = _quad_pieces(integrand, lo, hi, pts)
    return v


def rcr_upper_bound(f, g, alpha, beta, D: int = 3) -> MeasureValue:
    """min{G_g(beta), ||g||_inf} (<r^2>_f/D)^{D/2} e^{B_D(alpha)}.

    The beta = 1 branch of G_g is the literal disequilibrium-squared over
    root-entropy form; it is flagged in ``notes`` because its dimensions do
    not match the other branches.
    """
    alpha, beta = _check_order(alpha), _check_order(beta)
    gs, approx = sup_norm(g)
    notes = {"sup_norm": gs, "sup_norm_approximate": approx}
    if approx:
        warnings.warn("sup norm obtained by grid maximization", QuadratureWarning)
    if beta < 1.0:
        G = gs ** (-beta / (1.0 - beta))
    elif beta == 1.0:
        r3 = renyi(g, 3.0).value
        G = disequilibrium(g).value ** 2 / math.sqrt(r3) if r3 > 0 else math.nan
        notes["beta_one_branch"] = "literal form; dimensionally inconsistent"
    else:
        G = gs
    notes["G"] = G
    pref = min(G, gs) if math.isfinite(G) else gs
    r2 = second_moment(f)
    val = pref * (r2 / D) ** (D / 2.0) * math.exp(bound_b(D, alpha))
    method = "exact" if _is_exact(f) and _is_exact(g) else "quadrature"
    return MeasureValue(val, method, 0.0, notes=notes)
