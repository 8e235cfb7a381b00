"""Exact combinatorial engine for generalized simplicial complexes.

The package models dual complexes of normal crossing configurations:
complexes whose cells carry identity (distinct simplices may share a
vertex set), the cone extensions that mirror blow-ups, simplicial and
triangulated cartesian products, and exact rational homology.
"""

from __future__ import annotations

from .complexes import (
    DeltaComplex,
    Simplex,
    SimplexSubset,
    closed_star,
    closure,
    interior,
    is_star_closed,
    link,
    star,
    validate_complex,
)
from .errors import DualComplexError
from .homology import (
    W0_CAVEAT,
    BettiVector,
    betti_numbers,
    boundary_matrices,
    euler_characteristic,
    homology_equal,
)
from .ops import (
    CollapseCertificate,
    CollapseFailure,
    ConeExtensionInstruction,
    ProductTriangulation,
    SimplicialMap,
    cartesian_product_triangulated,
    compose_maps,
    cone_extension,
    cone_id,
    greedy_collapse,
    simplicial_product,
    star_subdivision,
    validate_certificate,
    vertex_induced_map,
)
from .snc import (
    INSIDE,
    INTERSECTION,
    TRANSVERSE,
    BlowUpCenter,
    EmbeddedPair,
    PairStep,
    ResolutionScript,
    ScriptRun,
    SncConfiguration,
    Stratum,
    StrictSncDescriptor,
    blow_up,
    derive_cone_extension,
    fiber_complex,
    run_script,
    track_embedded_pair,
)

__version__ = "0.1.0"

__all__ = [
    "DeltaComplex",
    "Simplex",
    "SimplexSubset",
    "DualComplexError",
    "validate_complex",
    "star",
    "closed_star",
    "link",
    "closure",
    "interior",
    "is_star_closed",
    "BettiVector",
    "W0_CAVEAT",
    "betti_numbers",
    "boundary_matrices",
    "euler_characteristic",
    "homology_equal",
    "ConeExtensionInstruction",
    "SimplicialMap",
    "ProductTriangulation",
    "CollapseCertificate",
    "CollapseFailure",
    "cone_extension",
    "cone_id",
    "star_subdivision",
    "simplicial_product",
    "cartesian_product_triangulated",
    "compose_maps",
    "vertex_induced_map",
    "greedy_collapse",
    "validate_certificate",
    "INTERSECTION",
    "INSIDE",
    "TRANSVERSE",
    "Stratum",
    "SncConfiguration",
    "BlowUpCenter",
    "ResolutionScript",
    "ScriptRun",
    "EmbeddedPair",
    "PairStep",
    "StrictSncDescriptor",
    "blow_up",
    "derive_cone_extension",
    "run_script",
    "track_embedded_pair",
    "fiber_complex",
    "__version__",
]
