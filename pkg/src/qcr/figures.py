"""Parameter grids for the eleven published figures, emitted as CSV + SVG.

Plot ranges and resolutions are not part of the captions, so they are fixed
here and documented per figure:

* lambda axes: positive branch, 200 evenly spaced points on [1.1, 100];
* n axes (Figs. 2, 10, 11): n = 0..20;
* Fig. 3 axes: D_e in [0.5, 10], r_e in [0.5, 5], m_mu in [0.5, 10], 200 points,
  natural units with hbar = 1.

The ``system`` column names the densities (``iso``, ``pho``, or
``numerator/denominator`` for ratios) followed by the molecule in brackets
when one is involved, e.g. ``iso/pho[CO]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import molecules
from .evaluate import Engine, Result, StateSpec
from .states import PseudoharmonicParams, QuantumNumbers
from .svg import Panel, render

__all__ = [
    "CSV_COLUMNS",
    "FIGURES",
    "LAMBDA_RANGE",
    "N_MAX",
    "FigureData",
    "Row",
    "format_value",
    "row_fields",
    "build_figure",
    "write_figure",
]

CSV_COLUMNS = ("measure", "system", "n", "l", "m", "alpha", "beta", "lambda",
               "param", "param_value", "value", "abs_err", "method")
LAMBDA_RANGE = (1.1, 100.0)
N_MAX = 20
POINTS = 200
FIG3_RANGES = {"De": (0.5, 10.0), "re": (0.5, 5.0), "mu": (0.5, 10.0)}
FIG3_LAMBDA = 1.5
FIG45_PARAMS = PseudoharmonicParams(3.5, 0.5, 1.0, 1.0)
FIG45_ORDERS = ((2.25, 3.0), (2.5, 1.5))
FIGURES = tuple(range(1, 12))


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return f"{float(v):.15g}"


@dataclass(frozen=True)
class Row:
    measure: str
    system: str
    n: int
    l: int
    m: int
    alpha: float | None
    beta: float | None
    lam: float | None
    param: str
    param_value: float
    value: float
    abs_err: float
    method: str
    converged: bool = True


def row_fields(r: Row) -> list:
    return [format_value(v) for v in (r.measure, r.system, r.n, r.l, r.m, r.alpha, r.beta, r.lam,
                                      r.param, r.param_value, r.value, r.abs_err, r.method)]


@dataclass
class FigureData:
    number: int
    title: str
    rows: list = field(default_factory=list)
    panels: list = field(default_factory=list)
    columns: int = 2

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.rows)

    def csv_text(self) -> str:
        lines = [",".join(CSV_COLUMNS)] + [",".join(row_fields(r)) for r in self.rows]
        return "\n".join(lines) + "\n"

    def svg_text(self) -> str:
        return render(self.panels, f"Figure {self.number}: {self.title}", self.columns)


def _lambda_grid(points: int) -> list:
    return [float(x) for x in np.linspace(*LAMBDA_RANGE, points)]


def _row(measure, system, qn, alpha, beta, lam, param, pv, res: Result) -> Row:
    return Row(measure, system, qn.n, qn.l, qn.m, alpha, beta, lam, param, pv,
               res.value, res.abs_err, res.method, res.converged)


def _molecule_params():
    return [(rec.name, molecules.to_params(rec)) for rec in molecules.builtin_table()]


# ---------------------------------------------------------------------------


def _fig_lambda_molecules(num, eng, points, measure, alpha, beta, title, ylabel):
    """Iso ground state of each builtin molecule against lambda."""
    qn = QuantumNumbers(0, 0, 0)
    fig = FigureData(num, title, columns=1)
    panel = Panel(title, "lambda", ylabel)
    for name, p in _molecule_params():
        xs, ys = [], []
        for lam in _lambda_grid(points):
            st = StateSpec("iso", p, qn, lam)
            if measure == "renyi":
                res = eng.renyi(st, alpha)
            else:
                res = eng.grc(st, alpha, beta)
            fig.rows.append(_row(measure, f"iso[{name}]", qn, alpha, beta, lam, "lambda", lam, res))
            xs.append(lam)
            ys.append(res.value)
        panel.add(name, xs, ys)
    fig.panels.append(panel)
    return fig


def figure1(eng, points=POINTS):
    return _fig_lambda_molecules(1, eng, points, "renyi", 2.5, None,
                                 "Renyi entropy of the isospectral ground state, alpha = 2.5", "R")


def figure2(eng, points=None):
    fig = FigureData(2, "RCR(iso, pho) of (n,0,0) against n, (alpha, beta) = (2.25, 3.5), lambda = 2.5", columns=1)
    panel = Panel(fig.title, "n", "RCR")
    lam, a, b = 2.5, 2.25, 3.5
    for name, p in _molecule_params():
        xs, ys = [], []
        for n in range(N_MAX + 1):
            qn = QuantumNumbers(n, 0, 0)
            res = eng.rcr(StateSpec("iso", p, qn, lam), StateSpec("pho", p, qn), a, b)
            fig.rows.append(_row("rcr", f"iso/pho[{name}]", qn, a, b, lam, "n", n, res))
            xs.append(n)
            ys.append(res.value)
        panel.add(name, xs, ys)
    fig.panels.append(panel)
    return fig


def figure3(eng, points=POINTS):
    fig = FigureData(3, "RCR against D_e, r_e, m_mu (lambda = 1.5, hbar = 1)", columns=3)
    curves = (("pho", "iso", 2.5, 3.0), ("iso", "pho", 2.5, 3.0), ("pho", "iso", 3.5, 2.75), ("iso", "pho", 3.5, 2.75))
    for qn in (QuantumNumbers(0, 0, 0), QuantumNumbers(3, 2, 1)):
        for param, (lo, hi) in FIG3_RANGES.items():
            panel = Panel(f"({qn.n},{qn.l},{qn.m}) vs {param}", param, "RCR")
            grid = [float(x) for x in np.linspace(lo, hi, points)]
            for num, den, a, b in curves:
                ys = []
                for v in grid:
                    kw = {"De": 1.0, "re": 1.0, "mu": 1.0, "hbar": 1.0}
                    kw[param] = v
                    p = PseudoharmonicParams(**kw)
                    st = {"pho": StateSpec("pho", p, qn), "iso": StateSpec("iso", p, qn, FIG3_LAMBDA)}
                    res = eng.rcr(st[num], st[den], a, b)
                    fig.rows.append(_row("rcr", f"{num}/{den}", qn, a, b, FIG3_LAMBDA, param, v, res))
                    ys.append(res.value)
                panel.add(f"C({num},{den}) ({a:g},{b:g})", grid, ys)
            fig.panels.append(panel)
    return fig


def _fig45(num, eng, points, kind):
    title = ("RCR" if kind == "rcr" else "GRC") + " against lambda, D_e = 7/2, r_e = 1/2, m_mu = 1, hbar = 1"
    fig = FigureData(num, title, columns=2)
    p = FIG45_PARAMS
    lams = _lambda_grid(points)
    for qn in (QuantumNumbers(0, 1, 1), QuantumNumbers(1, 1, 1)):
        pho = StateSpec("pho", p, qn)
        for a, b in FIG45_ORDERS:
            panel = Panel(f"({qn.n},{qn.l},{qn.m}) orders ({a:g},{b:g})", "lambda", kind.upper())
            ref = eng.grc(pho, a, b)
            curves = {}
            for lam in lams:
                iso = StateSpec("iso", p, qn, lam)
                if kind == "rcr":
                    pairs = {"pho/iso": (pho, iso), "iso/pho": (iso, pho)}
                    for tag, (f, g) in pairs.items():
                        res = eng.rcr(f, g, a, b)
                        fig.rows.append(_row("rcr", tag, qn, a, b, lam, "lambda", lam, res))
                        curves.setdefault(f"C({tag.replace('/', ',')})", []).append(res.value)
                else:
                    res = eng.grc(iso, a, b)
                    fig.rows.append(_row("grc", "iso", qn, a, b, lam, "lambda", lam, res))
                    curves.setdefault("GRC iso", []).append(res.value)
                fig.rows.append(_row("grc", "pho", qn, a, b, None, "lambda", lam, ref))
            for label, ys in curves.items():
                panel.add(label, lams, ys)
            panel.add("GRC pho", lams, [ref.value] * len(lams))
            fig.panels.append(panel)
    return fig


def figure4(eng, points=POINTS):
    return _fig45(4, eng, points, "rcr")


def figure5(eng, points=POINTS):
    return _fig45(5, eng, points, "grc")


def figure6(eng, points=POINTS):
    return _fig_lambda_molecules(6, eng, points, "grc", 8.5, 3.5,
                                 "GRC of the isospectral ground state, (alpha, beta) = (8.5, 3.5)", "GRC")


def figure7(eng, points=POINTS):
    return _fig_lambda_molecules(7, eng, points, "grc", 2.25, 3.5,
                                 "GRC of the isospectral ground state, (alpha, beta) = (2.25, 3.5)", "GRC")


def _fig_src(num, eng, points, alpha):
    fig = _fig_lambda_molecules(num, eng, points, "grc", alpha, 2.0,
                                f"SRC of the isospectral ground state, alpha = {alpha:g}", "SRC")
    fig.rows = [Row(**{**r.__dict__, "measure": "src"}) for r in fig.rows]
    return fig


def figure8(eng, points=POINTS):
    return _fig_src(8, eng, points, 2.5)


def figure9(eng, points=POINTS):
    return _fig_src(9, eng, points, 1.75)


def _fig_levels(num, eng, pairs, title):
    lam, a = 2.5, 2.5
    fig = FigureData(num, title, columns=2)
    for upper, lower in pairs:
        tag = f"{upper}(n+1)/{lower}(n)"
        panel = Panel(f"C({upper}_(n+1), {lower}_n)", "n", "RCR")
        for name, p in _molecule_params():
            xs, ys = [], []
            for n in range(N_MAX + 1):
                st_hi = StateSpec(upper, p, QuantumNumbers(n + 1, 0, 0), lam if upper == "iso" else None)
                st_lo = StateSpec(lower, p, QuantumNumbers(n, 0, 0), lam if lower == "iso" else None)
                res = eng.rcr(st_hi, st_lo, a, a)
                fig.rows.append(_row("rcr", f"{tag}[{name}]", QuantumNumbers(n, 0, 0), a, a, lam, "n", n, res))
                xs.append(n)
                ys.append(res.value)
            panel.add(name, xs, ys)
        fig.panels.append(panel)
    return fig


def figure10(eng, points=None):
    return _fig_levels(10, eng, (("pho", "pho"), ("iso", "iso")),
                       "RCR between successive levels (n+1,0,m), (n,0,m); lambda = 2.5, orders (2.5, 2.5)")


def figure11(eng, points=None):
    return _fig_levels(11, eng, (("pho", "iso"), ("iso", "pho")),
                       "RCR between successive levels across systems; lambda = 2.5, orders (2.5, 2.5)")


_BUILDERS = {1: figure1, 2: figure2, 3: figure3, 4: figure4, 5: figure5, 6: figure6,
             7: figure7, 8: figure8, 9: figure9, 10: figure10, 11: figure11}


def build_figure(number: int, engine: Engine | None = None, points: int = POINTS) -> FigureData:
    if number not in _BUILDERS:
        raise ValueError(f"figure must be one of 1..11, got {number}")
    if points < 2:
        raise ValueError("need at least two points per axis")
    return _BUILDERS[number](engine or Engine("auto"), points)


def write_figure(fig: FigureData, out_dir) -> tuple:
    import os

    os.makedirs(out_dir, exist_ok=True)
    base = os.path.join(out_dir, f"figure{fig.number:02d}")
    with open(base + ".csv", "w", newline="\n", encoding="utf-8") as fh:
        fh.write(fig.csv_text())
    with open(base + ".svg", "w", newline="\n", encoding="utf-8") as fh:
        fh.write(fig.svg_text())
    return base + ".csv", base + ".svg"
