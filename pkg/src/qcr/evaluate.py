"""Method routing between closed forms and quadrature, with entropy caching.

Every composite measure is assembled from Renyi entropies, so one cache of
``R(system, params, state, lambda, order)`` serves whole figure grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import closedform, measures
from .measures import MeasureValue
from .specfun import DomainError
from .states import (
    PseudoharmonicParams,
    QuantumNumbers,
    check_lambda,
    rho_iso,
    rho_pho,
)

__all__ = ["MEASURES", "SYSTEMS", "METHODS", "Engine", "StateSpec", "Result", "is_closed_order"]

SYSTEMS = ("pho", "iso")
METHODS = ("auto", "closed", "quad")
MEASURES = ("renyi", "shannon", "tsallis", "rcr", "grc", "src", "lmc", "length", "diseq", "bound")


@dataclass(frozen=True)
class StateSpec:
    system: str
    params: PseudoharmonicParams
    qn: QuantumNumbers
    lam: float | None = None

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise DomainError(f"system must be one of {SYSTEMS}")
        if self.system == "iso":
            if self.lam is None:
                raise DomainError("the isospectral system needs lambda")
            check_lambda(self.lam)
        elif self.lam is not None:
            object.__setattr__(self, "lam", None)


@dataclass(frozen=True)
class Result:
    value: float
    abs_err: float
    method: str
    converged: bool = True


def is_closed_order(alpha: float) -> bool:
    return float(alpha).is_integer() and alpha >= 2


class Engine:
    """Evaluates measures; ``method`` is auto, closed or quad."""

    def __init__(self, method: str = "auto", policy: closedform.TruncationPolicy | None = None):
        if method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}")
        self.method = method
        self.policy = policy
        self._entropies: dict = {}
        self._densities: dict = {}

    def density(self, st: StateSpec):
        key = (st.system, st.params, st.qn, st.lam)
        if key not in self._densities:
            if st.system == "pho":
                self._densities[key] = rho_pho(st.params, st.qn)
            else:
                self._densities[key] = rho_iso(st.params, st.qn, st.lam)
        return self._densities[key]

    def _closed(self, st: StateSpec, order: int) -> MeasureValue:
        if st.system == "pho":
            return closedform.renyi_pho_closed(st.params, st.qn, order, self.policy)
        return closedform.renyi_iso_closed(st.params, st.qn, st.lam, order, self.policy)

    def renyi(self, st: StateSpec, order: float) -> Result:
        order = float(order)
        if not order > 0:
            raise DomainError(f"order must be positive, got {order}")
        key = (st, order)
        if key in self._entropies:
            return self._entropies[key]
        use_closed = self.method == "closed" or (self.method == "auto" and is_closed_order(order))
        if self.method == "closed" and not is_closed_order(order):
            raise DomainError(f"closed forms need an integer order >= 2, got {order:g}")
        mv = None
        if use_closed:
            try:
                mv = self._closed(st, int(order))
            except closedform.CombinatorialBudgetError:
                if self.method == "closed":
                    raise
        if mv is None:
            mv = measures.renyi(self.density(st), order)
        tag = "closed" if mv.method == "closed" else "quad"
        res = Result(mv.value, mv.abs_error_estimate, tag, mv.converged)
        self._entropies[key] = res
        return res

    # composite measures -------------------------------------------------
    @staticmethod
    def _method_tag(*parts: Result) -> str:
        tags = {p.method for p in parts}
        return tags.pop() if len(tags) == 1 else "mixed"

    def _ratio(self, a: Result, b: Result) -> Result:
        v = math.exp(a.value - b.value)
        return Result(v, v * (a.abs_err + b.abs_err), self._method_tag(a, b), a.converged and b.converged)

    def rcr(self, num: StateSpec, den: StateSpec, alpha: float, beta: float) -> Result:
        return self._ratio(self.renyi(num, alpha), self.renyi(den, beta))

    def grc(self, st: StateSpec, alpha: float, beta: float) -> Result:
        if float(alpha) == float(beta):
            r = self.renyi(st, alpha)
            return Result(1.0, 0.0, r.method, r.converged)
        return self._ratio(self.renyi(st, alpha), self.renyi(st, beta))

    def evaluate(self, measure: str, st: StateSpec, alpha: float | None = None,
                 beta: float | None = None, den: StateSpec | None = None) -> Result:
        """One measure for one state (``den`` is the rcr/bound denominator)."""
        if measure not in MEASURES:
            raise DomainError(f"unknown measure {measure!r}")
        if measure == "renyi":
            return self.renyi(st, alpha)
        if measure == "shannon":
            return self.renyi(st, 1.0)
        if measure == "tsallis":
            r = self.renyi(st, alpha)
            if float(alpha) == 1.0:
                return r
            t = measures.tsallis_from_renyi(r.value, alpha)
            # dT/dR = exp((1-alpha) R)
            return Result(t, math.exp((1.0 - alpha) * r.value) * r.abs_err, r.method, r.converged)
        if measure == "rcr":
            return self.rcr(st, den if den is not None else st, alpha, beta)
        if measure == "grc":
            return self.grc(st, alpha, beta)
        if measure == "src":
            return self.grc(st, alpha, 2.0)
        if measure == "lmc":
            return self.grc(st, 1.0, 2.0)
        if measure == "length":
            r = self.renyi(st, alpha)
            v = (3.0 / (4.0 * math.pi)) ** (1.0 / 3.0) * math.exp(r.value / 3.0)
            return Result(v, v * r.abs_err / 3.0, r.method, r.converged)
        if measure == "diseq":
            r = self.renyi(st, 2.0)
            v = math.exp(-r.value)
            return Result(v, v * r.abs_err, r.method, r.converged)
        # bound
        f = self.density(st)
        g = self.density(den if den is not None else st)
        mv = measures.rcr_upper_bound(f, g, alpha, beta)
        return Result(mv.value, mv.abs_error_estimate, "quad", mv.converged)
