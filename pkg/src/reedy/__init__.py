from .checks import (
    LatchingMonoReport,
    ReedyCheckReport,
    RelativeComparison,
    Verdict,
    cofibration_comparison,
    fibration_comparison,
    latching_mono_check,
    reedy_fib_cofib_check,
)
from .gset import (
    FreenessVerdict,
    Group,
    GroupError,
    GSet,
    NotEquivariant,
    NotMono,
    automorphism_group,
    build_group,
    build_gset,
    cyclic_group,
    functor_gset,
    gset_free_cofibration_check,
    regular_gset,
    trivial_gset,
)
from .latching import LatchingObject, matching_latching
from .pushouts import (
    CompatibleSquare,
    HomPushoutFailed,
    MinusConditionsReport,
    NotCommuting,
    PushoutCertificate,
    SectionIncompatible,
    certify_absolute_pushout,
    complete_square,
    mediating_morphism,
    minus_conditions,
    sections_of,
)
from .ssets import (
    DIAGRAM_CACHE_SIZE,
    diagram_category,
    level_presheaf,
    slice_presheaf,
    sset_diagram,
    sset_diagram_map,
)
from .structure import (
    BUILTIN_REEDY,
    ClassNotClosed,
    DegreeViolation,
    FactorizationMissing,
    FactorizationNotUnique,
    ReedyError,
    ReedyStructure,
    attach_reedy,
    builtin_reedy,
    fin_pointed_reedy,
    fin_reedy,
    poset_reedy,
    reedy_from_json,
    simplex_reedy,
)

__all__ = [
    "ReedyError",
    "DegreeViolation",
    "FactorizationMissing",
    "FactorizationNotUnique",
    "ClassNotClosed",
    "ReedyStructure",
    "attach_reedy",
    "reedy_from_json",
    "simplex_reedy",
    "poset_reedy",
    "fin_reedy",
    "fin_pointed_reedy",
    "BUILTIN_REEDY",
    "builtin_reedy",
    "LatchingObject",
    "matching_latching",
    "Verdict",
    "ReedyCheckReport",
    "RelativeComparison",
    "fibration_comparison",
    "cofibration_comparison",
    "reedy_fib_cofib_check",
    "LatchingMonoReport",
    "latching_mono_check",
    "NotCommuting",
    "SectionIncompatible",
    "HomPushoutFailed",
    "CompatibleSquare",
    "MinusConditionsReport",
    "PushoutCertificate",
    "sections_of",
    "complete_square",
    "minus_conditions",
    "certify_absolute_pushout",
    "mediating_morphism",
    "GroupError",
    "NotEquivariant",
    "NotMono",
    "Group",
    "GSet",
    "FreenessVerdict",
    "build_group",
    "cyclic_group",
    "automorphism_group",
    "build_gset",
    "regular_gset",
    "trivial_gset",
    "functor_gset",
    "gset_free_cofibration_check",
    "DIAGRAM_CACHE_SIZE",
    "diagram_category",
    "level_presheaf",
    "slice_presheaf",
    "sset_diagram",
    "sset_diagram_map",
]
