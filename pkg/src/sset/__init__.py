from .kan import (
    HornSquare,
    KanReport,
    chain_union_map,
    horn_squares,
    kan_check_upto,
    stage_map,
    yoneda_filler,
)
from .lifting import (
    Filler,
    LiftingProblem,
    SquareNotCommuting,
    build_lifting_problem,
    solve_lifting,
    verify_filler,
)
from .pi import adjunction_counts, dependent_product, fibre_sizes, global_sections, sections_over
from .simplicial import (
    Cell,
    CellKind,
    DimensionOutOfRange,
    SimplicialError,
    boundary,
    delta,
    dim_of,
    discrete_sset,
    generate_cell,
    horn,
    indiscrete_nerve,
    level,
    nondegenerate,
    simplex_morphism,
    standard_simplex,
    truncation_of,
    yoneda_map,
)
from .transport import (
    EpiTriangle,
    EqRelData,
    TransportFailed,
    check_epi_triangle,
    epi_triangle,
    eqrel_data,
    filler_transport,
    kernel_pair,
    transport_kan_check,
)

__all__ = [
    "SimplicialError",
    "DimensionOutOfRange",
    "SquareNotCommuting",
    "TransportFailed",
    "CellKind",
    "Cell",
    "delta",
    "level",
    "dim_of",
    "truncation_of",
    "standard_simplex",
    "boundary",
    "horn",
    "generate_cell",
    "discrete_sset",
    "indiscrete_nerve",
    "nondegenerate",
    "simplex_morphism",
    "yoneda_map",
    "LiftingProblem",
    "Filler",
    "build_lifting_problem",
    "verify_filler",
    "solve_lifting",
    "HornSquare",
    "KanReport",
    "horn_squares",
    "yoneda_filler",
    "kan_check_upto",
    "chain_union_map",
    "stage_map",
    "EpiTriangle",
    "EqRelData",
    "epi_triangle",
    "check_epi_triangle",
    "kernel_pair",
    "eqrel_data",
    "filler_transport",
    "transport_kan_check",
    "sections_over",
    "dependent_product",
    "adjunction_counts",
    "global_sections",
    "fibre_sizes",
]
