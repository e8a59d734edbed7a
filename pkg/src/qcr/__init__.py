"""Renyi-type information measures for pseudoharmonic and isospectral densities."""

from .closedform import (
    CombinatorialBudgetError,
    TruncationPolicy,
    grc_closed,
    j2_moment,
    rcr_closed,
    renyi_iso_closed,
    renyi_pho_closed,
    src_closed,
)
from .measures import MeasureValue, grc, lmc, rcr, rcr_upper_bound, renyi, shannon, src, tsallis
from .molecules import MoleculeRecord, find_molecule, load_molecules, to_params
from .specfun import DomainError
from .states import PseudoharmonicParams, QuantumNumbers, rho_iso, rho_pho

__version__ = "0.1.0"

__all__ = [
    "CombinatorialBudgetError",
    "DomainError",
    "MeasureValue",
    "MoleculeRecord",
    "PseudoharmonicParams",
    "QuantumNumbers",
    "TruncationPolicy",
    "find_molecule",
    "grc",
    "grc_closed",
    "j2_moment",
    "lmc",
    "load_molecules",
    "rcr",
    "rcr_closed",
    "rcr_upper_bound",
    "renyi",
    "renyi_iso_closed",
    "renyi_pho_closed",
    "shannon",
    "src",
    "src_closed",
    "to_params",
    "tsallis",
    "__version__",
]
