from .apply import PolyElement, apply_poly, apply_poly_map, check_poly_element, poly_size
from .dependent import DepPolySignature, apply_dep_poly, build_dep_signature
from .presheaf_poly import hat_fiber, hat_fiber_presheaf, natural_families, presheaf_poly
from .signature import (
    PolySignature,
    SignatureError,
    arity_signature,
    build_signature,
    signature_from_fibers,
)

__all__ = [
    "PolySignature",
    "SignatureError",
    "build_signature",
    "signature_from_fibers",
    "arity_signature",
    "PolyElement",
    "poly_size",
    "apply_poly",
    "apply_poly_map",
    "check_poly_element",
    "DepPolySignature",
    "build_dep_signature",
    "apply_dep_poly",
    "hat_fiber",
    "hat_fiber_presheaf",
    "natural_families",
    "presheaf_poly",
]
