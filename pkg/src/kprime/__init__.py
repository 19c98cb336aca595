"""Pointed monoids, their pointed sets, and truncated Grothendieck groups."""

from .aset import FiniteASet, is_pc_aset
from .errors import KPrimeError, ParseError
from .ktheory import burnside_report, compute, devissage_check, localization_check
from .monoid import FiniteMonoid, is_pc_monoid
from .nset import FgNSet, FunctionalNSet, classify_nset

__version__ = "0.1.0"

__all__ = [
    "FgNSet",
    "FiniteASet",
    "FiniteMonoid",
    "FunctionalNSet",
    "KPrimeError",
    "ParseError",
    "burnside_report",
    "classify_nset",
    "compute",
    "devissage_check",
    "is_pc_aset",
    "is_pc_monoid",
    "localization_check",
]
