from .builtins import (
    SizeOutOfRange,
    cospan_category,
    fin_category,
    fin_pointed_category,
    map_ends,
    map_id,
    map_values,
    poset_category,
    product_category,
    product_object,
    simplex_category,
    span_category,
    terminal_category,
    walking_arrow,
)
from .category import (
    AssociativityViolation,
    CategoryError,
    CompositionUndefined,
    FinCategory,
    UnitViolation,
    UnknownIdentifier,
    build_fincategory,
)
from .constructions import (
    coproduct,
    empty_presheaf,
    pairing,
    product,
    pullback,
    representable,
    subpresheaf,
    terminal_map,
    terminal_presheaf,
)
from .finset import EMPTY, FinSet, all_functions, is_injective, is_surjective
from .image import chain_colimit, image_factorization
from .limits import (
    Cocone,
    Cone,
    DiagramMap,
    FinDiagram,
    build_diagram,
    build_diagram_map,
    finite_colimit,
    finite_limit,
)
from .presheaf import (
    FunctorialityViolation,
    NaturalityViolation,
    Presheaf,
    PshMap,
    build_presheaf,
    build_psh_map,
    compose_maps,
    identity_map,
    is_pointwise_injective,
    is_pointwise_surjective,
    maps_equal,
    presheaf_from_action,
)
from .search import count_natural_maps, first_natural_map, natural_maps

__all__ = [
    "FinSet",
    "EMPTY",
    "all_functions",
    "is_injective",
    "is_surjective",
    "FinCategory",
    "build_fincategory",
    "CategoryError",
    "UnknownIdentifier",
    "SizeOutOfRange",
    "CompositionUndefined",
    "AssociativityViolation",
    "UnitViolation",
    "Presheaf",
    "PshMap",
    "build_presheaf",
    "build_psh_map",
    "presheaf_from_action",
    "identity_map",
    "compose_maps",
    "maps_equal",
    "is_pointwise_injective",
    "is_pointwise_surjective",
    "FunctorialityViolation",
    "NaturalityViolation",
    "FinDiagram",
    "DiagramMap",
    "build_diagram",
    "build_diagram_map",
    "Cone",
    "Cocone",
    "finite_limit",
    "finite_colimit",
    "image_factorization",
    "chain_colimit",
    "natural_maps",
    "first_natural_map",
    "count_natural_maps",
    "terminal_presheaf",
    "empty_presheaf",
    "representable",
    "terminal_map",
    "product",
    "coproduct",
    "pullback",
    "pairing",
    "subpresheaf",
    "terminal_category",
    "walking_arrow",
    "cospan_category",
    "span_category",
    "poset_category",
    "simplex_category",
    "fin_category",
    "fin_pointed_category",
    "product_category",
    "product_object",
    "map_id",
    "map_values",
    "map_ends",
]
