"""Piecewise-constant test densities and exact measure-theoretic operations.

Step densities are radially symmetric in D dimensions.  Shell radii and the
probability carried by each shell are held as :class:`fractions.Fraction`
(floats convert exactly), so total probability, effective-domain volumes,
majorization and delta-neighborhood checks are decided in exact arithmetic.
Only logarithms and powers are evaluated in floating point.

These objects expose the ``*_exact`` hooks consumed by :mod:`qcr.measures`,
so ``measures.renyi``/``rcr``/``rcr_upper_bound`` accept them directly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from .specfun import DomainError

__all__ = [
    "unit_ball_volume",
    "StepDensity",
    "StepMixture",
    "DiscreteDistribution",
    "ExtremalityResidual",
    "OverlapWarning",
    "make_example_pair",
    "renyi_step",
    "near_continuity_ladder",
    "richardson_limit",
    "effective_domain_measure",
    "is_localized",
    "majorizes",
    "delta_neighboring",
    "sup_gap",
    "transform",
    "mixture",
    "copies",
    "extremality_residual",
    "random_discrete",
    "random_majorized_pair",
]


def unit_ball_volume(D: int) -> float:
    """C_D = 2 pi^{D/2} / (D Gamma(D/2))."""
    if int(D) != D or D < 1:
        raise DomainError(f"dimension must be a positive integer, got {D!r}")
    return math.exp(math.log(2.0) + 0.5 * D * math.log(math.pi) - math.log(D) - math.lgamma(0.5 * D))


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"non-finite value {x!r}")
    return Fraction(x)


def _check_order(alpha) -> float:
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"order must be a positive finite real, got {alpha!r}")
    return alpha


def _log_moment(masses, measures, alpha) -> float:
    """ln sum_i m_i^alpha vol_i^{1-alpha} over cells with positive mass."""
    terms = [alpha * math.log(m) + (1.0 - alpha) * math.log(v)
             for m, v in zip(masses, measures) if m > 0]
    return float(logsumexp(terms))


def _shannon(masses, measures) -> float:
    return -math.fsum(m * math.log(m / v) for m, v in zip(masses, measures) if m > 0)


def _renyi(masses, measures, alpha) -> float:
    alpha = _check_order(alpha)
    if alpha == 1.0:
        return _shannon(masses, measures)
    return _log_moment(masses, measures, alpha) / (1.0 - alpha)


@dataclass(frozen=True)
class StepDensity:
    """Radial step density in D dimensions centered at ``center``.

    ``masses[i]`` is the probability in the shell between ``radii[i-1]`` and
    ``radii[i]`` (the first shell starts at the center).  The level on that
    shell is ``masses[i] / (C_D (radii[i]^D - radii[i-1]^D))``.
    """

    dimension: int
    radii: tuple
    masses: tuple
    center: tuple = ()

    def __post_init__(self):
        D = self.dimension
        if int(D) != D or D < 1:
            raise DomainError(f"dimension must be a positive integer, got {D!r}")
        radii = tuple(_frac(r) for r in self.radii)
        masses = tuple(_frac(m) for m in self.masses)
        if not radii or len(radii) != len(masses):
            raise ValueError("need one mass per shell radius")
        if radii[0] <= 0 or any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be positive and strictly increasing")
        if any(m < 0 for m in masses):
            raise ValueError("shell masses must be nonnegative")
        if sum(masses) != 1:
            raise ValueError(f"shell masses must sum to exactly 1, got {float(sum(masses))!r}")
        center = tuple(_frac(c) for c in self.center) if self.center else (Fraction(0),) * D
        if len(center) != D:
            raise ValueError("center must have D coordinates")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "center", center)

    @classmethod
    def from_levels(cls, dimension: int, shells: Sequence[tuple], center=()) -> "StepDensity":
        """Build from (outer_radius, level) pairs, renormalizing exactly.

        Levels are taken up to a common factor; only their ratios and the
        radii matter.
        """
        radii = [_frac(r) for r, _ in shells]
        levels = [_frac(v) for _, v in shells]
        u = _shell_units(radii, dimension)
        raw = [lv * ui for lv, ui in zip(levels, u)]
        tot = sum(raw)
        if tot <= 0:
            raise ValueError("density has zero total mass")
        return cls(dimension, tuple(radii), tuple(r / tot for r in raw), center)

    # geometry -----------------------------------------------------------
    @property
    def shell_units(self) -> tuple:
        """radii[i]^D - radii[i-1]^D, exact; shell volume is C_D times this."""
        return _shell_units(self.radii, self.dimension)

    @property
    def shell_volumes(self) -> tuple:
        c = unit_ball_volume(self.dimension)
        return tuple(c * float(u) for u in self.shell_units)

    @property
    def levels(self) -> tuple:
        c = unit_ball_volume(self.dimension)
        return tuple(float(m / u) / c for m, u in zip(self.masses, self.shell_units))

    @property
    def shells(self) -> tuple:
        return tuple(zip((float(r) for r in self.radii), self.levels))

    @property
    def outer_radius(self) -> Fraction:
        return self.radii[-1]

    def __call__(self, x):
        """Density at a point (sequence of D coordinates) or at radius r if D=1."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        dist = float(np.linalg.norm(x - np.array([float(c) for c in self.center])))
        for r, lv in zip(self.radii, self.levels):
            if dist < r:
                return lv
        return 0.0

    # hooks for qcr.measures --------------------------------------------
    def log_entropic_moment_exact(self, alpha) -> float:
        return _log_moment([float(m) for m in self.masses], self.shell_volumes, _check_order(alpha))

    def shannon_exact(self) -> float:
        return _shannon([float(m) for m in self.masses], self.shell_volumes)

    def sup_exact(self) -> float:
        return max(lv for lv, m in zip(self.levels, self.masses) if m > 0)

    def second_moment_exact(self) -> float:
        """<|r|^2> about the origin (not the center)."""
        D = self.dimension
        acc = Fraction(0)
        inner = Fraction(0)
        for r, m, u in zip(self.radii, self.masses, self.shell_units):
            # uniform on a shell: <|r-c|^2> = D/(D+2) (r^{D+2} - r0^{D+2}) / (r^D - r0^D)
            acc += m * Fraction(D, D + 2) * (r ** (D + 2) - inner ** (D + 2)) / u
            inner = r
        return float(acc + sum(c * c for c in self.center))

    def to_joint_density(self):
        """The same density as a quadrature-ready JointDensity (D=3, centered)."""
        from .states import JointDensity

        if self.dimension != 3 or any(self.center):
            raise ValueError("only centered three-dimensional step densities convert")
        radii = np.array([float(r) for r in self.radii])
        log_lv = np.array([math.log(4.0 * math.pi * lv) if lv > 0 else -math.inf
                           for lv in self.levels])

        def log_radial(r):
            r = np.asarray(r, dtype=float)
            idx = np.searchsorted(radii, r, side="right")
            out = np.where(idx < len(radii), log_lv[np.minimum(idx, len(radii) - 1)], -np.inf)
            return float(out) if out.ndim == 0 else out

        def angular(x):
            return np.full_like(np.asarray(x, dtype=float), 1.0 / (4.0 * math.pi))

        def evaluator(r, theta, phi=0.0):
            return np.exp(log_radial(r)) / (4.0 * math.pi)

        return JointDensity(
            evaluator=evaluator, dimension=3, separable=True, phi_uniform=True,
            radial_tail_scale=float(self.outer_radius), sup_hint=self.sup_exact(),
            log_radial=log_radial, angular=angular, radial_support=float(self.outer_radius),
            radial_breakpoints=tuple(radii[:-1]), radial_center=0.0, label="step",
        )


def _shell_units(radii, D) -> tuple:
    out, inner = [], Fraction(0)
    for r in radii:
        out.append(r**D - inner**D)
        inner = r
    return tuple(out)


class OverlapWarning(UserWarning):
    """A mixture has overlapping, non-concentric components."""


@dataclass(frozen=True)
class StepMixture:
    """Weighted sum of step densities with pairwise-disjoint supports.

    For disjoint components the entropic moments add exactly:
    I[sum w_i f_i] = sum w_i^alpha I[f_i].
    """

    components: tuple
    weights: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("empty mixture")
        w = tuple(_frac(x) for x in self.weights)
        if sum(w) != 1 or any(x <= 0 for x in w):
            raise ValueError("mixture weights must be positive and sum to exactly 1")
        object.__setattr__(self, "weights", w)
        dims = {c.dimension for c in self.components}
        if len(dims) != 1:
            raise ValueError("mixture components must share a dimension")
        if not _pairwise_disjoint(self.components):
            raise ValueError("StepMixture components must have disjoint supports")

    @property
    def dimension(self) -> int:
        return self.components[0].dimension

    def log_entropic_moment_exact(self, alpha) -> float:
        alpha = _check_order(alpha)
        return float(logsumexp([alpha * math.log(w) + c.log_entropic_moment_exact(alpha)
                                for c, w in zip(self.components, self.weights)]))

    def shannon_exact(self) -> float:
        return math.fsum(float(w) * (c.shannon_exact() - math.log(w))
                         for c, w in zip(self.components, self.weights))

    def sup_exact(self) -> float:
        return max(float(w) * c.sup_exact() for c, w in zip(self.components, self.weights))

    def second_moment_exact(self) -> float:
        return math.fsum(float(w) * c.second_moment_exact()
                         for c, w in zip(self.components, self.weights))


def _pairwise_disjoint(components) -> bool:
    for i, a in enumerate(components):
        for b in components[i + 1:]:
            d2 = sum((x - y) ** 2 for x, y in zip(a.center, b.center))
            if d2 < (a.outer_radius + b.outer_radius) ** 2:
                return False
    return True


@dataclass(frozen=True)
class DiscreteDistribution:
    """Cell densities p_i on cells of measure m_i with sum p_i m_i = 1.

    Without ``cell_measures`` every cell has unit measure and ``p`` is an
    ordinary probability vector.
    """

    probabilities: tuple
    cell_measures: tuple | None = None

    def __post_init__(self):
        p = tuple(float(x) for x in self.probabilities)
        if not p or any(not (x >= 0 and math.isfinite(x)) for x in p):
            raise ValueError("probabilities must be nonnegative and finite")
        object.__setattr__(self, "probabilities", p)
        if self.cell_measures is not None:
            m = tuple(float(x) for x in self.cell_measures)
            if len(m) != len(p) or any(not x > 0 for x in m):
                raise ValueError("need one positive measure per cell")
            object.__setattr__(self, "cell_measures", m)
        total = math.fsum(x * y for x, y in zip(p, self.measures))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"total probability is {total!r}, not 1")

    @property
    def measures(self) -> tuple:
        return self.cell_measures if self.cell_measures is not None else (1.0,) * len(self.probabilities)

    @property
    def masses(self) -> tuple:
        return tuple(x * y for x, y in zip(self.probabilities, self.measures))

    def log_entropic_moment_exact(self, alpha) -> float:
        return _log_moment(self.masses, self.measures, _check_order(alpha))

    def shannon_exact(self) -> float:
        return _shannon(self.masses, self.measures)

    def sup_exact(self) -> float:
        return max(self.probabilities)


# ---------------------------------------------------------------------------


def make_example_pair(D: int, B, delta1, delta1_prime):
    """(f1, g1, f2, g2) step densities of the near-continuity example.

    f1 puts mass 1-delta1 on the unit ball and delta1 on the shell 1<|r|<B;
    g1 does the same with delta1_prime; f2 = g2 is uniform on the unit ball.
    """
    B = _frac(B)
    d1, d2 = _frac(delta1), _frac(delta1_prime)
    if not B > 1:
        raise DomainError("B must exceed 1")
    for d in (d1, d2):
        if not 0 < d < 1:
            raise DomainError("delta must lie in (0, 1)")
    f1 = StepDensity(D, (1, B), (1 - d1, d1))
    g1 = StepDensity(D, (1, B), (1 - d2, d2))
    f2 = StepDensity(D, (1,), (1,))
    return f1, g1, f2, f2


def renyi_step(rho, alpha) -> float:
    """Renyi entropy of a step density or discrete distribution, in closed form.

    alpha = 1 gives the Shannon sum.
    """
    if isinstance(rho, StepDensity):
        return _renyi([float(m) for m in rho.masses], rho.shell_volumes, alpha)
    if isinstance(rho, (DiscreteDistribution, StepMixture)):
        alpha = _check_order(alpha)
        return rho.shannon_exact() if alpha == 1.0 else rho.log_entropic_moment_exact(alpha) / (1.0 - alpha)
    raise TypeError(f"unsupported density type {type(rho).__name__}")


def near_continuity_ladder(D: int, alpha, beta, deltas=(1e-1, 1e-2, 1e-3, 1e-4), B=None) -> list:
    """ln rcr(f1, g1) along delta1 = delta1' for the example pair.

    B defaults to 2^(1/D), so the outer shell has the volume of the unit ball.
    """
    B = 2.0 ** (1.0 / D) if B is None else B
    out = []
    for d in deltas:
        f1, g1, _, _ = make_example_pair(D, B, d, d)
        out.append(renyi_step(f1, alpha) - renyi_step(g1, beta))
    return out


def _ladder_exponents(alpha: float, beta: float, k: int) -> list:
    # Leading small-delta terms of ln rcr: delta^(j*order) for orders below 1,
    # delta*ln(delta) at order 1, delta^order above 1, plus regular powers.
    ex = set()
    for g in (float(alpha), float(beta)):
        if g < 1.0:
            ex |= {(round(j * g, 12), 0) for j in range(1, k + 3)}
        elif g == 1.0:
            ex.add((1.0, 1))
        else:
            ex.add((g, 0))
    ex |= {(1.0, 0), (2.0, 0), (3.0, 0)}
    return sorted(ex, key=lambda e: (e[0], -e[1]))[:k]


def richardson_limit(D: int, alpha, beta, deltas=(1e-5, 1e-6, 1e-7, 1e-8), B=None) -> float:
    """Extrapolated delta -> 0 limit of rcr(f1, g1) on a geometric ladder.

    Generalized Richardson: fit ln rcr = c0 + sum c_k phi_k(delta) with the
    len(deltas) - 1 leading asymptotic terms and return exp(c0).
    """
    ys = near_continuity_ladder(D, alpha, beta, deltas, B)
    ex = _ladder_exponents(float(alpha), float(beta), len(deltas) - 1)
    A = np.array([[1.0] + [d**e * (math.log(d) if lg else 1.0) for e, lg in ex] for d in deltas])
    c = np.linalg.solve(A, np.array(ys))
    return math.exp(c[0])


def effective_domain_measure(rho: StepDensity) -> float:
    """Volume of the support (zero-mass shells excluded)."""
    return unit_ball_volume(rho.dimension) * float(_support_units(rho))


def _support_units(rho: StepDensity) -> Fraction:
    return sum((u for u, m in zip(rho.shell_units, rho.masses) if m > 0), Fraction(0))


def is_localized(f: StepDensity, g: StepDensity) -> str:
    """'f_localized', 'g_localized' or 'equal' by effective-domain volume."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    a, b = _support_units(f), _support_units(g)
    if a < b:
        return "f_localized"
    if b < a:
        return "g_localized"
    return "equal"


def _excess(rho: StepDensity, tau: Fraction) -> Fraction:
    # C_D * int [rho - tau/C_D]^+ ; levels are m/(C_D u)
    return sum((max(m - tau * u, Fraction(0)) for m, u in zip(rho.masses, rho.shell_units)),
               Fraction(0))


def majorizes(f, g) -> bool:
    """f majorizes g.

    Discrete: sorted prefix sums of f dominate those of g (equal lengths,
    unit cells).  Step densities: int [f - t]^+ >= int [g - t]^+ at every
    level of f and g, which is exhaustive because both sides are piecewise
    linear in t with kinks only at those levels.
    """
    if isinstance(f, DiscreteDistribution) and isinstance(g, DiscreteDistribution):
        if f.cell_measures is not None or g.cell_measures is not None:
            raise ValueError("discrete majorization needs unit cell measures")
        n = max(len(f.probabilities), len(g.probabilities))
        a = sorted(f.probabilities + (0.0,) * (n - len(f.probabilities)), reverse=True)
        b = sorted(g.probabilities + (0.0,) * (n - len(g.probabilities)), reverse=True)
        ca = np.cumsum([Fraction(x) for x in a])
        cb = np.cumsum([Fraction(x) for x in b])
        return all(x >= y for x, y in zip(ca[:-1], cb[:-1]))
    if isinstance(f, StepDensity) and isinstance(g, StepDensity):
        if f.dimension != g.dimension:
            raise ValueError("dimension mismatch")
        thresholds = {Fraction(0)}
        for rho in (f, g):
            thresholds.update(m / u for m, u in zip(rho.masses, rho.shell_units))
        return all(_excess(f, t) >= _excess(g, t) for t in thresholds)
    raise TypeError("majorizes compares two discrete distributions or two step densities")


def _level_pieces(rho: StepDensity):
    """[(r_lo, r_hi, scaled_level)] with scaled level = C_D * density."""
    out, inner = [], Fraction(0)
    for r, m, u in zip(rho.radii, rho.masses, rho.shell_units):
        out.append((inner, r, m / u))
        inner = r
    return out


def delta_neighboring(f: StepDensity, g: StepDensity, delta) -> bool:
    """True iff |f - g| >= delta only on a null set.

    Requires concentric inputs; the comparison runs over the common
    refinement of both shell partitions.
    """
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    if f.center != g.center:
        raise ValueError("delta_neighboring needs concentric step densities")
    c = unit_ball_volume(f.dimension)
    edges = sorted(set(f.radii) | set(g.radii))

    def level_at(rho, r):
        for lo, hi, lv in _level_pieces(rho):
            if lo < r <= hi:
                return lv
        return Fraction(0)

    inner = Fraction(0)
    gap = 0.0
    for r in edges:
        mid = (inner + r) / 2
        gap = max(gap, float(abs(level_at(f, mid) - level_at(g, mid))) / c)
        inner = r
    return gap < float(delta)


def sup_gap(f: StepDensity, g: StepDensity) -> float:
    """Essential sup of |f - g| for concentric step densities."""
    if f.center != g.center:
        raise ValueError("sup_gap needs concentric step densities")
    c = unit_ball_volume(f.dimension)
    edges = sorted(set(f.radii) | set(g.radii))
    gap, inner = Fraction(0), Fraction(0)
    for r in edges:
        mid = (inner + r) / 2
        lf = next((lv for lo, hi, lv in _level_pieces(f) if lo < mid <= hi), Fraction(0))
        lg = next((lv for lo, hi, lv in _level_pieces(g) if lo < mid <= hi), Fraction(0))
        gap = max(gap, abs(lf - lg))
        inner = r
    return float(gap) / c


def transform(rho: StepDensity, a, b=None) -> StepDensity:
    """a^D rho(a (r - b)); the support shrinks by a and moves to b + center/a."""
    a = _frac(a)
    if not a > 0:
        raise DomainError("scale must be positive")
    D = rho.dimension
    if b is None:
        b = (0,) * D
    b = tuple(_frac(x) for x in (b if isinstance(b, (tuple, list, np.ndarray)) else (b,) * 1))
    if len(b) == 1 and D > 1:
        b = b + (Fraction(0),) * (D - 1)
    if len(b) != D:
        raise ValueError("shift must have D coordinates")
    center = tuple(bi + ci / a for bi, ci in zip(b, rho.center))
    return StepDensity(D, tuple(r / a for r in rho.radii), rho.masses, center)


def mixture(components: Sequence[tuple]):
    """sum_i w_i rho_i for (StepDensity, weight) pairs.

    Concentric components merge into a single StepDensity.  Disjoint
    components give a StepMixture.  Anything else overlaps off-center; it is
    flagged with OverlapWarning and rejected, since no exact evaluator
    exists for it.
    """
    comps = [c for c, _ in components]
    weights = [_frac(w) for _, w in components]
    if sum(weights) != 1:
        raise ValueError("mixture weights must sum to 1")
    if any(w < 0 for w in weights):
        raise ValueError("mixture weights must be nonnegative")
    if not comps:
        raise ValueError("empty mixture")
    if all(c.center == comps[0].center for c in comps) and all(c.dimension == comps[0].dimension
                                                                for c in comps):
        return _merge_concentric(comps, weights)
    if _pairwise_disjoint(comps):
        keep = [(c, w) for c, w in zip(comps, weights) if w > 0]
        return StepMixture(tuple(c for c, _ in keep), tuple(w for _, w in keep))
    warnings.warn("mixture components overlap off-center", OverlapWarning)
    raise ValueError("overlapping non-concentric mixtures have no exact evaluator")


def _merge_concentric(comps, weights) -> StepDensity:
    D = comps[0].dimension
    edges = sorted(set().union(*(c.radii for c in comps)))
    units = _shell_units(edges, D)
    masses = []
    inner = Fraction(0)
    for r, u in zip(edges, units):
        mid = (inner + r) / 2
        lv = Fraction(0)
        for c, w in zip(comps, weights):
            lv += w * next((l for lo, hi, l in _level_pieces(c) if lo < mid <= hi), Fraction(0))
        masses.append(lv * u)
        inner = r
    return StepDensity(D, tuple(edges), tuple(masses), comps[0].center)


def copies(rho: StepDensity, n: int, spacing=None) -> StepMixture | StepDensity:
    """n disjoint copies n^{D/2-1} rho(sqrt(n)(r - a_i)), each of mass 1/n.

    The shifts a_i lie on the first axis, ``spacing`` apart (default: twice
    the shrunken outer radius plus one).  sqrt(n) is rounded to a double.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    scale = Fraction(math.sqrt(n))
    base = transform(rho, scale)
    if n == 1:
        return base
    step = _frac(spacing) if spacing is not None else 2 * base.outer_radius + 1
    D = rho.dimension
    comps = [transform(rho, scale, (i * step,) + (0,) * (D - 1)) for i in range(n)]
    return StepMixture(tuple(comps), (Fraction(1, n),) * n)


@dataclass(frozen=True)
class ExtremalityResidual:
    """Largest violations of the stationarity conditions of ln C over a partition.

    ``eq41``: cross-multiplied p^a/q^b condition from varying cell measures.
    ``eq42``: second-variation conditions on p^a m and q^b m.
    ``first_variation``: spread of the constrained gradient in p and q; it is
    zero exactly when (f uniform or alpha = 0) and (g uniform or beta = 0).
    """

    eq41: float
    eq42: float
    first_variation: float
    per_cell: dict = field(default_factory=dict, compare=False)

    @property
    def max(self) -> float:
        return max(self.eq41, self.eq42)


def _grad_spread(p, m, alpha) -> float:
    # d/dp_i of (1/(1-a)) ln sum p^a m, per unit cell measure
    if alpha == 0.0:
        return 0.0
    if alpha == 1.0:
        g = [-(math.log(x) + 1.0) for x in p]
    else:
        s = math.fsum(x**alpha * y for x, y in zip(p, m))
        g = [alpha / (1.0 - alpha) * x ** (alpha - 1.0) / s for x in p]
    return max(g) - min(g)


def extremality_residual(f: DiscreteDistribution, g: DiscreteDistribution, alpha, beta) -> ExtremalityResidual:
    """Stationarity residuals of ln C(f, g) on a shared partition.

    Orders may be zero here (the degenerate extremal cases use them); all
    cell probabilities must be positive.
    """
    alpha, beta = float(alpha), float(beta)
    if alpha < 0 or beta < 0:
        raise DomainError("orders must be nonnegative")
    if f.measures != g.measures:
        raise ValueError("f and g must share cell measures")
    p, q, m = f.probabilities, g.probabilities, f.measures
    if min(p) <= 0 or min(q) <= 0:
        raise ValueError("extremality residuals need strictly positive cells")
    sf = math.fsum(x**alpha * y for x, y in zip(p, m))
    sg = math.fsum(x**beta * y for x, y in zip(q, m))
    r41 = [abs(x**alpha * (1.0 - beta) * sg - y**beta * (1.0 - alpha) * sf) / (sf * sg)
           for x, y in zip(p, q)]

    def second(vals, order, s):
        if order == 0.0:
            return [math.inf] * len(vals)
        c = (order - 1.0) / order
        return [abs(x**order * y / s - c) for x, y in zip(vals, m)]

    r42 = [max(a, b) for a, b in zip(second(p, alpha, sf), second(q, beta, sg))]
    fv = max(_grad_spread(p, m, alpha), _grad_spread(q, m, beta))
    return ExtremalityResidual(max(r41), max(r42), fv, {"eq41": r41, "eq42": r42})


# ---------------------------------------------------------------------------
# random batteries


def random_discrete(rng: np.random.Generator, n: int) -> DiscreteDistribution:
    x = rng.dirichlet(np.full(n, 0.7))
    x = x / math.fsum(x)
    return DiscreteDistribution(tuple(float(v) for v in x))


def random_majorized_pair(rng: np.random.Generator, n: int) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """(f, g) with f majorizing g: g = P f for a random doubly stochastic P."""
    f = random_discrete(rng, n)
    k = int(rng.integers(1, 5))
    w = rng.dirichlet(np.ones(k))
    P = sum(wi * np.eye(n)[rng.permutation(n)] for wi in w)
    gv = P @ np.array(f.probabilities)
    gv = np.clip(gv, 0.0, None)
    gv = gv / math.fsum(gv)
    return f, DiscreteDistribution(tuple(float(v) for v in gv))
