"""Symmetric and exterior cohomology of finite groups, crossed extensions
and their symmetric sections."""

from .algebra import (FiniteGroup, GModule, build_cyclic, direct_product, sign_module, symmetric_group,
                      trivial_module, validate_group, validate_module)
from .cochains import Cochain, Flavor, coboundary, tau
from .cohomology import class_in_image_alpha3, cohomology, comparison_map, is_coboundary
from .errors import (BudgetExceeded, InternalInconsistency, SizeGuardError, SymcohError, TwoTorsionError,
                     ValidationError)
from .invariants import AbGroupInvariants

__all__ = [
    "FiniteGroup", "GModule", "build_cyclic", "direct_product", "sign_module", "symmetric_group",
    "trivial_module", "validate_group", "validate_module", "Cochain", "Flavor", "coboundary", "tau",
    "class_in_image_alpha3", "cohomology", "comparison_map", "is_coboundary", "AbGroupInvariants",
    "SymcohError", "ValidationError", "SizeGuardError", "InternalInconsistency", "BudgetExceeded",
    "TwoTorsionError",
]
