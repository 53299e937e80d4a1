"""Explicit descent obstructions for hyperelliptic curves y^2 = x^(2g+2) - a over Q(sqrt p)."""

from .construct import DescentExample, check_hypotheses, generate_example, generate_family
from .obstruction import (ObstructionReport, build_report, certify_nontrivial,
                          refute_witnesses)
from .padic import PadicNumber, RamifiedElem, embed, hensel_root
from .pell import PellSolution, cf_sqrt, fundamental_negative, solution_at
from .periods import filtered_basis, minimal_period, pullback_matrix
from .quadfield import QuadElem

__version__ = "0.1.0"

__all__ = [
    "DescentExample", "ObstructionReport", "PadicNumber", "PellSolution", "QuadElem",
    "RamifiedElem", "build_report", "certify_nontrivial", "cf_sqrt", "check_hypotheses",
    "embed", "filtered_basis", "fundamental_negative", "generate_example", "generate_family",
    "hensel_root", "minimal_period", "pullback_matrix", "refute_witnesses", "solution_at",
]
