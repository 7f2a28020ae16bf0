from .dependent import dep_compatible, enumerate_dep_stage, sort_of
from .fold import (
    Algebra,
    AlgebraError,
    algebra_from_function,
    build_algebra,
    fold,
    is_algebra_morphism,
)
from .stages import StageChain, enumerate_stage, next_stage
from .tree import (
    FiberMismatch,
    TreeError,
    WTree,
    check_tree,
    rank,
    subtrees,
    sup,
    tree_from_json,
)

__all__ = [
    "WTree",
    "TreeError",
    "FiberMismatch",
    "sup",
    "rank",
    "subtrees",
    "check_tree",
    "tree_from_json",
    "StageChain",
    "enumerate_stage",
    "next_stage",
    "Algebra",
    "AlgebraError",
    "build_algebra",
    "algebra_from_function",
    "fold",
    "is_algebra_morphism",
    "enumerate_dep_stage",
    "dep_compatible",
    "sort_of",
]
