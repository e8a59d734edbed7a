"""Diatomic molecule records, unit conversion and the shipped table."""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .states import PseudoharmonicParams

__all__ = [
    "AMU_EV",
    "CM1_EV",
    "CHBAR_EV_ANGSTROM",
    "ENV_VAR",
    "HEADER",
    "PRINTED_SPACINGS_EV",
    "UNIT_ALIASES",
    "MoleculeFileError",
    "MoleculeRecord",
    "load_molecules",
    "parse_molecules",
    "to_params",
    "from_params",
    "builtin_table",
    "default_table",
    "find_molecule",
]

# Frozen conversion constants; not CODATA on purpose.
AMU_EV = 931.494028e6
CM1_EV = 1.239841875e-4
CHBAR_EV_ANGSTROM = 1973.29

ENV_VAR = "QCR_MOLECULES"
HEADER = ("name", "De", "De_unit", "re_angstrom", "mu_amu", "source")

UNIT_ALIASES = {"eV": "eV", "cm-1": "cm-1", "cm^-1": "cm-1", "cm⁻¹": "cm-1", "1/cm": "cm-1"}

PRINTED_SPACINGS_EV = {
    "CO": 0.203796,
    "NO": 0.164915,
    "N2": 0.218245,
    "CH": 0.336462,
    "H2": 0.756658,
    "ScH": 0.155542,
}


class MoleculeFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    De: float
    De_unit: str
    re: float
    mu: float
    source: str = ""

    def __post_init__(self):
        if not self.name:
            raise MoleculeFileError("empty molecule name")
        if self.De_unit not in ("eV", "cm-1"):
            raise MoleculeFileError(f"unknown energy unit {self.De_unit!r}")
        for label, v in (("De", self.De), ("re", self.re), ("mu", self.mu)):
            if not (math.isfinite(v) and v > 0):
                raise MoleculeFileError(f"{self.name}: {label} must be positive, got {v!r}")

    @property
    def De_eV(self) -> float:
        return self.De * CM1_EV if self.De_unit == "cm-1" else self.De


def _number(text: str, what: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise MoleculeFileError(f"{what} is not a number: {text!r}", line) from None


def parse_molecules(text: str) -> list[MoleculeRecord]:
    """Parse the CSV format; ``#`` lines are comments."""
    records: list[MoleculeRecord] = []
    seen: set[str] = set()
    header_seen = False
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        line = reader.line_num
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        row = [c.strip() for c in row]
        if not header_seen:
            if tuple(row) != HEADER:
                raise MoleculeFileError(f"expected header {','.join(HEADER)}", line)
            header_seen = True
            continue
        if len(row) != len(HEADER):
            raise MoleculeFileError(f"expected {len(HEADER)} fields, got {len(row)}", line)
        name, de, de_unit, re_a, mu_a, source = row
        if de_unit not in UNIT_ALIASES:
            raise MoleculeFileError(f"unknown energy unit {de_unit!r} (use eV or cm-1)", line)
        try:
            rec = MoleculeRecord(name, _number(de, "De", line), UNIT_ALIASES[de_unit],
                                 _number(re_a, "re", line), _number(mu_a, "mu", line), source)
        except MoleculeFileError as exc:
            if exc.line is None:
                raise MoleculeFileError(str(exc), line) from None
            raise
        if name in seen:
            raise MoleculeFileError(f"duplicate molecule {name!r}", line)
        seen.add(name)
        records.append(rec)
    if not header_seen:
        raise MoleculeFileError("missing header row")
    return records


def load_molecules(path) -> list[MoleculeRecord]:
    return parse_molecules(Path(path).read_text(encoding="utf-8"))


def to_params(rec: MoleculeRecord) -> PseudoharmonicParams:
    """(eV, Angstrom) parameters with mu as mu*c^2 and hbar as c*hbar."""
    return PseudoharmonicParams(De=rec.De_eV, re=rec.re, mu=rec.mu * AMU_EV, hbar=CHBAR_EV_ANGSTROM)


def from_params(params: PseudoharmonicParams, name: str = "custom", De_unit: str = "eV",
                source: str = "") -> MoleculeRecord:
    De = params.De / CM1_EV if De_unit == "cm-1" else params.De
    return MoleculeRecord(name, De, De_unit, params.re, params.mu / AMU_EV, source)


def builtin_table() -> list[MoleculeRecord]:
    text = resources.files("qcr").joinpath("data/molecules.csv").read_text(encoding="utf-8")
    return parse_molecules(text)


def default_table() -> list[MoleculeRecord]:
    """The file named by QCR_MOLECULES if set, else the shipped table."""
    path = os.environ.get(ENV_VAR)
    return load_molecules(path) if path else builtin_table()


def find_molecule(name: str, table: list[MoleculeRecord] | None = None) -> MoleculeRecord:
    table = default_table() if table is None else table
    for rec in table:
        if rec.name.lower() == name.lower():
            return rec
    raise KeyError(f"unknown molecule {name!r}; known: {', '.join(r.name for r in table)}")
