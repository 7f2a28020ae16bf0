from .hat import HatSignature, hat_construction
from .stages import (
    PshStageChain,
    enumerate_psh_stage,
    hat_stage_trees,
    hereditarily_natural_part,
    stage_isomorphism,
    stage_presheaf,
    unfold,
)
from .trees import (
    NaturalityStatus,
    TargetMismatch,
    check_psh_tree,
    is_composable,
    is_hereditarily_natural,
    is_natural,
    naturality_status,
    psh_rank,
    restrict_tree,
    tree_object,
)

__all__ = [
    "HatSignature",
    "hat_construction",
    "TargetMismatch",
    "NaturalityStatus",
    "restrict_tree",
    "is_composable",
    "is_natural",
    "is_hereditarily_natural",
    "naturality_status",
    "psh_rank",
    "tree_object",
    "check_psh_tree",
    "PshStageChain",
    "enumerate_psh_stage",
    "stage_presheaf",
    "stage_isomorphism",
    "unfold",
    "hat_stage_trees",
    "hereditarily_natural_part",
]
