from .aczel import (
    AczelMatcher,
    aczel_bisimilar,
    bisimulation_relation,
    count_bisimulation_proofs,
    extensional_quotient,
)
from .afa import afa_classes
from .eqrel import (
    ConditionFailed,
    EqClassMap,
    ImageNotEquivalence,
    PseudoEqRel,
    QuotientError,
    check_pseudo_eqrel,
    composable_pairs,
    mediating_map,
    partition_from_pairs,
    quotient_by_pseudo_eqrel,
    witnesses_by_search,
)
from .hf import denotation, hf_sets, realizable, render_hf

__all__ = [
    "QuotientError",
    "ConditionFailed",
    "ImageNotEquivalence",
    "PseudoEqRel",
    "EqClassMap",
    "composable_pairs",
    "check_pseudo_eqrel",
    "witnesses_by_search",
    "partition_from_pairs",
    "quotient_by_pseudo_eqrel",
    "mediating_map",
    "AczelMatcher",
    "aczel_bisimilar",
    "count_bisimulation_proofs",
    "extensional_quotient",
    "bisimulation_relation",
    "hf_sets",
    "realizable",
    "denotation",
    "render_hf",
    "afa_classes",
]
