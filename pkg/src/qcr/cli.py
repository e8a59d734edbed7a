"""Command-line interface: ``qcr compute | sweep | verify | reproduce``.

Exit codes: 0 success, 1 verification failure, 2 invalid flags,
3 domain violation, 4 numerical non-convergence (output still written).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import figures, molecules, verification
from .closedform import CombinatorialBudgetError
from .evaluate import MEASURES, METHODS, Engine, Result, StateSpec
from .figures import format_value
from .specfun import DomainError
from .states import PseudoharmonicParams, QuantumNumbers

log = logging.getLogger("qcr")

EXIT_OK, EXIT_VERIFY, EXIT_FLAGS, EXIT_DOMAIN, EXIT_NONCONV = 0, 1, 2, 3, 4
COMPUTE_COLUMNS = ("measure", "system", "n", "l", "m", "alpha", "beta", "lambda",
                   "value", "abs_err", "method")
SWEEP_PARAMS = ("lambda", "De", "re", "mu", "n", "alpha", "beta")
INFLATE = 10.0


class FlagError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMS:
            raise FlagError(f"sweep parameter must be one of {SWEEP_PARAMS}")
        if self.scale not in ("linear", "log"):
            raise FlagError("scale must be linear or log")
        if int(self.steps) != self.steps or self.steps < 2:
            raise FlagError("steps must be an integer >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise FlagError("sweep endpoints must be finite")
        if self.start == self.stop:
            raise FlagError("sweep endpoints must differ")
        if self.scale == "log" and not (self.start * self.stop > 0):
            raise FlagError("log scale needs nonzero endpoints of the same sign")

    def values(self) -> list:
        if self.scale == "linear":
            vals = np.linspace(self.start, self.stop, self.steps)
        else:
            sign = 1.0 if self.start > 0 else -1.0
            vals = sign * np.geomspace(abs(self.start), abs(self.stop), self.steps)
        vals = [float(v) for v in vals]
        if self.parameter == "n":
            ints = [round(v) for v in vals]
            if any(abs(v - k) > 1e-9 for v, k in zip(vals, ints)):
                raise FlagError("an n sweep must land on integers; adjust --from/--to/--steps")
            return ints
        return vals


# ---------------------------------------------------------------------------
# argument parsing


def _state_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("system")
    g.add_argument("--system", choices=("pho", "iso"))
    g.add_argument("--molecule", help="builtin or file-provided molecule name")
    g.add_argument("--molecules", metavar="FILE", help="molecule CSV file (default: $%s or builtin)" % molecules.ENV_VAR)
    g.add_argument("--De", type=float)
    g.add_argument("--De-unit", dest="De_unit", default="eV")
    g.add_argument("--re", type=float)
    g.add_argument("--mu", type=float)
    g.add_argument("--units", choices=("molecular", "natural"), default="molecular",
                   help="molecular: De in eV or cm-1, re in Angstrom, mu in amu; natural: consistent units")
    g.add_argument("--hbar", type=float, default=1.0, help="hbar in natural units")
    g.add_argument("--lambda", dest="lam", type=float)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--l", type=int, default=0)
    g.add_argument("--m", type=int, default=0)
    m = p.add_argument_group("measure")
    m.add_argument("--measure", choices=MEASURES, required=True)
    m.add_argument("--alpha", type=float)
    m.add_argument("--beta", type=float)
    m.add_argument("--method", choices=METHODS, default="auto")
    m.add_argument("--numerator", choices=("pho", "iso"))
    m.add_argument("--denominator", choices=("pho", "iso"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="one measure at one state; prints a CSV row")
    _state_args(c)
    c.add_argument("--no-header", action="store_true")

    s = sub.add_parser("sweep", help="one measure over a parameter grid; writes CSV")
    _state_args(s)
    s.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--scale", choices=("linear", "log"), default="linear")
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--svg", help="optional SVG line plot path")

    v = sub.add_parser("verify", help="run invariant suites; prints a JSON summary")
    v.add_argument("--suite", choices=verification.SUITES, default="all")
    v.add_argument("--molecules", metavar="FILE")
    v.add_argument("--report", metavar="FILE", help="also write the JSON summary here")

    r = sub.add_parser("reproduce", help="regenerate a published figure as CSV + SVG")
    r.add_argument("--figure", required=True, help="1..11 or 'all'")
    r.add_argument("--out", required=True, metavar="DIR")
    r.add_argument("--points", type=int, default=figures.POINTS, help="grid points per continuous axis")
    return parser


# ---------------------------------------------------------------------------
# request resolution


@dataclass
class Request:
    measure: str
    num: StateSpec
    den: StateSpec | None
    alpha: float | None
    beta: float | None
    system_tag: str
    lam: float | None


def _table(args):
    return molecules.load_molecules(args.molecules) if args.molecules else molecules.default_table()


def _base_values(args) -> dict:
    """Parameter values in the user's units, before any sweep override."""
    if args.molecule:
        if any(v is not None for v in (args.De, args.re, args.mu)):
            raise FlagError("give either --molecule or explicit --De/--re/--mu, not both")
        try:
            rec = molecules.find_molecule(args.molecule, _table(args))
        except KeyError as exc:
            raise FlagError(str(exc)) from None
        return {"De": rec.De, "De_unit": rec.De_unit, "re": rec.re, "mu": rec.mu, "units": "molecular",
                "hbar": None, "name": rec.name}
    missing = [k for k in ("De", "re", "mu") if getattr(args, k) is None]
    if missing:
        raise FlagError("missing " + ", ".join("--" + k for k in missing) + " (or use --molecule)")
    return {"De": args.De, "De_unit": args.De_unit, "re": args.re, "mu": args.mu, "units": args.units,
            "hbar": args.hbar, "name": "custom"}


def _params(vals: dict) -> PseudoharmonicParams:
    if vals["units"] == "natural":
        return PseudoharmonicParams(vals["De"], vals["re"], vals["mu"], vals["hbar"])
    if vals["De_unit"] not in molecules.UNIT_ALIASES:
        raise FlagError(f"unknown energy unit {vals['De_unit']!r}")
    try:
        rec = molecules.MoleculeRecord(vals["name"], vals["De"], molecules.UNIT_ALIASES[vals["De_unit"]],
                                       vals["re"], vals["mu"], "cli")
    except molecules.MoleculeFileError as exc:
        raise DomainError(str(exc)) from None
    return molecules.to_params(rec)


def _orders(measure, alpha, beta):
    need = {"renyi": "a", "tsallis": "a", "length": "a", "src": "a", "rcr": "ab", "grc": "ab", "bound": "ab"}
    req = need.get(measure, "")
    if "a" in req and alpha is None:
        raise FlagError(f"--measure {measure} needs --alpha")
    if "b" in req and beta is None:
        raise FlagError(f"--measure {measure} needs --beta")
    fixed = {"shannon": (1.0, None), "lmc": (1.0, 2.0), "diseq": (2.0, None)}
    if measure in fixed:
        return fixed[measure]
    if measure == "src":
        return alpha, 2.0
    return alpha, (beta if "b" in req else None)


def _request(args, vals: dict, lam, qn: QuantumNumbers, alpha, beta) -> Request:
    measure = args.measure
    alpha, beta = _orders(measure, alpha, beta)
    params = _params(vals)
    if measure in ("rcr", "bound"):
        num = args.numerator or args.system or "iso"
        den = args.denominator or "pho"
        systems = (num, den)
    else:
        if args.system is None:
            raise FlagError(f"--measure {measure} needs --system")
        if args.numerator or args.denominator:
            raise FlagError("--numerator/--denominator apply to rcr and bound only")
        systems = (args.system,)
    if "iso" in systems and lam is None:
        raise FlagError("the isospectral system needs --lambda")
    specs = [StateSpec(s, params, qn, lam if s == "iso" else None) for s in systems]
    tag = "/".join(systems)
    return Request(measure, specs[0], specs[1] if len(specs) > 1 else None, alpha, beta, tag,
                   lam if "iso" in systems else None)


def _evaluate(eng: Engine, req: Request) -> Result:
    return eng.evaluate(req.measure, req.num, req.alpha, req.beta, req.den)


def _finalize(res: Result) -> Result:
    if res.converged:
        return res
    inflated = max(INFLATE * res.abs_err, 1e-6 * abs(res.value))
    return Result(res.value, inflated, res.method, False)


def _fields(req: Request, qn: QuantumNumbers, res: Result) -> list:
    return [format_value(v) for v in (req.measure, req.system_tag, qn.n, qn.l, qn.m, req.alpha,
                                      req.beta, req.lam, res.value, res.abs_err, res.method)]


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> int:
    vals = _base_values(args)
    qn = QuantumNumbers(args.n, args.l, args.m)
    req = _request(args, vals, args.lam, qn, args.alpha, args.beta)
    res = _finalize(_evaluate(Engine(args.method), req))
    out = sys.stdout
    if not args.no_header:
        out.write(",".join(COMPUTE_COLUMNS) + "\n")
    out.write(",".join(_fields(req, qn, res)) + "\n")
    out.flush()
    return EXIT_OK if res.converged else EXIT_NONCONV


def cmd_sweep(args) -> int:
    spec = SweepSpec(args.param, args.start, args.stop, args.steps, args.scale)
    grid = spec.values()
    base = _base_values(args)
    eng = Engine(args.method)
    nonconv = False
    xs, ys = [], []
    out_path = args.out
    try:
        with open(out_path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(",".join(figures.CSV_COLUMNS) + "\n")
            for v in grid:
                vals = dict(base)
                lam, n, alpha, beta = args.lam, args.n, args.alpha, args.beta
                if spec.parameter in ("De", "re", "mu"):
                    vals[spec.parameter] = v
                elif spec.parameter == "lambda":
                    lam = v
                elif spec.parameter == "n":
                    n = v
                elif spec.parameter == "alpha":
                    alpha = v
                else:
                    beta = v
                qn = QuantumNumbers(n, args.l, args.m)
                req = _request(args, vals, lam, qn, alpha, beta)
                res = _finalize(_evaluate(eng, req))
                nonconv |= not res.converged
                f = _fields(req, qn, res)
                row = f[:8] + [spec.parameter, format_value(v)] + f[8:]
                fh.write(",".join(row) + "\n")
                xs.append(v)
                ys.append(res.value)
    except BaseException:
        if os.path.exists(out_path):
            os.remove(out_path)
        raise
    if args.svg:
        from .svg import Panel, render

        panel = Panel(f"{args.measure} vs {spec.parameter}", spec.parameter, args.measure)
        panel.add(f"{args.measure} ({req.system_tag})", xs, ys)
        with open(args.svg, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(render([panel], columns=1))
    return EXIT_NONCONV if nonconv else EXIT_OK


def _json_safe(obj):
    # strict JSON has no Infinity/NaN
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def cmd_verify(args) -> int:
    checks = []
    table = None
    try:
        table = molecules.load_molecules(args.molecules) if args.molecules else molecules.default_table()
    except molecules.MoleculeFileError as exc:
        checks.append(verification.Check("molecules", f"molecule file: {exc}", math.inf, 0.0, False))
    except OSError as exc:
        raise FlagError(f"cannot read molecule file: {exc}") from None
    if table is not None:
        checks += verification.run_suite(args.suite, table)
    summary = verification.summarize(checks)
    summary["suite"] = args.suite
    text = json.dumps(_json_safe(summary), indent=2, sort_keys=True, allow_nan=False)
    sys.stdout.write(text + "\n")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    for f in summary["failures"]:
        sys.stderr.write(f"FAIL [{f['suite']}] {f['name']}: measured {f['measured']:.3e} "
                         f"> allowed {f['allowed']:.3e}\n")
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


def cmd_reproduce(args) -> int:
    if args.figure == "all":
        nums = list(figures.FIGURES)
    else:
        try:
            nums = [int(args.figure)]
        except ValueError:
            raise FlagError("--figure must be 1..11 or 'all'") from None
        if nums[0] not in figures.FIGURES:
            raise FlagError("--figure must be 1..11 or 'all'")
    if args.points < 2:
        raise FlagError("--points must be at least 2")
    eng = Engine("auto")
    ok = True
    for k in nums:
        fig = figures.build_figure(k, eng, args.points)
        csv_path, svg_path = figures.write_figure(fig, args.out)
        log.info("figure %d: %d rows -> %s, %s", k, len(fig.rows), csv_path, svg_path)
        ok &= fig.converged
    return EXIT_OK if ok else EXIT_NONCONV


COMMANDS = {"compute": cmd_compute, "sweep": cmd_sweep, "verify": cmd_verify, "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)
    try:
        return COMMANDS[args.command](args)
    except FlagError as exc:
        sys.stderr.write(f"qcr: error: {exc}\n")
        return EXIT_FLAGS
    except (molecules.MoleculeFileError, OSError) as exc:
        sys.stderr.write(f"qcr: error: {exc}\n")
        return EXIT_FLAGS
    except DomainError as exc:
        sys.stderr.write(f"qcr: domain error: {exc}\n")
        return EXIT_DOMAIN
    except CombinatorialBudgetError as exc:
        sys.stderr.write(f"qcr: closed form exceeds its budget: {exc}\n")
        return EXIT_NONCONV
    except ArithmeticError as exc:
        sys.stderr.write(f"qcr: numerical failure: {exc}\n")
        return EXIT_NONCONV


if __name__ == "__main__":
    sys.exit(main())
