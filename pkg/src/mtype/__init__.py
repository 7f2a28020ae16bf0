from .coalgebra import (
    Coalgebra,
    CoalgebraError,
    build_coalgebra,
    coalgebra_of_tree,
    is_coalgebra_morphism,
)
from .refine import Minimization, bisimilar, disjoint_union, minimize, refine
from .truncate import CUT, Cut, TruncTree, cut_at, truncate

__all__ = [
    "Coalgebra",
    "CoalgebraError",
    "build_coalgebra",
    "coalgebra_of_tree",
    "is_coalgebra_morphism",
    "CUT",
    "Cut",
    "TruncTree",
    "truncate",
    "cut_at",
    "refine",
    "disjoint_union",
    "bisimilar",
    "Minimization",
    "minimize",
]
