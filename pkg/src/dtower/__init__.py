"""Mod-2 correction terms d(S^3_{+1}(K)), d(S^3_{-1}(K)) from knot Floer complexes."""

from .complex import (
    Bifiltration,
    ChainElement,
    Generator,
    GeneratorKey,
    KnotComplex,
    ValidationReport,
    canonical_form,
    is_isomorphic,
    mirror,
    symmetry_check,
    tensor_product,
    validate_complex,
)
from .cone import borromean_complex, build_cone, tower_multiset, verify_borromean
from .dinv import (
    alt_signature_d,
    d_invariants,
    d_minus_one,
    d_plus_one,
    descend,
    large_surgery_d,
    tower_class,
)
from .errors import DTowerError
from .f2 import F2Matrix, homology_generators, rank, row_reduce
from .grading import assign_gradings, y_slice
from .io import read_complex, write_complex
from .models import (
    box_sum,
    c21_model,
    connected_sum,
    figure_eight,
    left_trefoil,
    preset,
    right_trefoil,
    staircase,
    torus_3_4,
    unknot,
)
from .truncation import Region, truncate_region

__version__ = "0.1.0"

__all__ = [
    "Bifiltration", "ChainElement", "Generator", "GeneratorKey", "KnotComplex",
    "ValidationReport", "canonical_form", "is_isomorphic", "mirror", "symmetry_check",
    "tensor_product", "validate_complex", "borromean_complex", "build_cone",
    "tower_multiset", "verify_borromean", "alt_signature_d", "d_invariants",
    "d_minus_one", "d_plus_one", "descend", "large_surgery_d", "tower_class",
    "DTowerError", "F2Matrix", "homology_generators", "rank", "row_reduce",
    "assign_gradings", "y_slice", "box_sum", "connected_sum", "preset", "staircase",
    "unknot", "right_trefoil", "left_trefoil", "torus_3_4", "figure_eight", "c21_model",
    "read_complex", "write_complex", "Region", "truncate_region",
]
