"""Exact integer homology and cohomology of small finite groups and their
extensions by Z, with twisted coefficients.

The group functions live in twistcoh.homology (homology, cohomology); they are
not re-exported so that the submodule name stays unshadowed.
"""

__version__ = "0.1.0"

from .errors import BudgetError, ExtensionAmbiguous, LiftError
from .linalg import IntMatrix, hermite_normal_form, kernel_basis, smith_normal_form, solve_integer
from .groups import FiniteGroup, GroupHom, MatrixRep, ZExtension, build_group, make_hom
from .modules import GModule, sign_module, trivial_module, twisted
from .homology import HClass, HMap, HomologyGroup, cap, cup, induced_map
from .wang import WangResult, wang_cohomology, wang_homology

__all__ = [
    "BudgetError", "ExtensionAmbiguous", "LiftError",
    "IntMatrix", "hermite_normal_form", "kernel_basis", "smith_normal_form", "solve_integer",
    "FiniteGroup", "GroupHom", "MatrixRep", "ZExtension", "build_group", "make_hom",
    "GModule", "sign_module", "trivial_module", "twisted",
    "HClass", "HMap", "HomologyGroup", "cap", "cup", "induced_map",
    "WangResult", "wang_cohomology", "wang_homology",
]
