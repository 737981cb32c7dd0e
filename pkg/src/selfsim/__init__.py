"""Finite self-similarity systems: categories, modules, and the spaces they present."""
from .chains import FiniteChain, PeriodicAddress, parse_address, parse_chain, prepend, push
from .cylinders import (
    adjacency_graph,
    cylinder_intersect,
    cylinder_member,
    first_separating_depth,
    inverse_image_cylinder,
    resolution_cover,
    rn_related,
)
from .dsl import DSLError, SystemDocument, parse_system, print_system
from .errors import AddressError, PreconditionError, SelfSimError, ValidationError
from .fincat import (
    FinCategory,
    Partition,
    SetValuedFunctor,
    UnionFind,
    category_of_elements,
    connected_components,
    is_componentwise_cofiltered,
    is_componentwise_filtered,
    opposite,
    validate_category,
    validate_functor,
)
from .modules import (
    Module,
    SelfSimilaritySystem,
    hom_module,
    tensor_equal,
    tensor_functor,
    tensor_modules,
    validate_module,
)
from .nondegeneracy import (
    check_flat,
    check_nondegenerate_functor,
    check_nondegenerate_module,
    components_of_functor,
)
from .omega import FrontierGraph, LassoCertificate, check_S1, check_S2, check_solvable, has_infinite_path
from .universal import (
    Coalgebra,
    EqualityVerdict,
    Ladder,
    canonical_map,
    decide_equal,
    iota,
    iota_inverse,
    level_category,
    level_components,
    res_set,
    resolutions_along_prefix,
    resolve,
    validate_coalgebra,
)

__all__ = [
    "AddressError",
    "adjacency_graph",
    "canonical_map",
    "category_of_elements",
    "check_flat",
    "check_nondegenerate_functor",
    "check_nondegenerate_module",
    "check_S1",
    "check_S2",
    "check_solvable",
    "Coalgebra",
    "components_of_functor",
    "connected_components",
    "cylinder_intersect",
    "cylinder_member",
    "decide_equal",
    "DSLError",
    "EqualityVerdict",
    "FinCategory",
    "FiniteChain",
    "first_separating_depth",
    "FrontierGraph",
    "has_infinite_path",
    "hom_module",
    "inverse_image_cylinder",
    "iota",
    "iota_inverse",
    "is_componentwise_cofiltered",
    "is_componentwise_filtered",
    "Ladder",
    "LassoCertificate",
    "level_category",
    "level_components",
    "Module",
    "opposite",
    "parse_address",
    "parse_chain",
    "parse_system",
    "Partition",
    "PeriodicAddress",
    "PreconditionError",
    "prepend",
    "print_system",
    "push",
    "res_set",
    "resolution_cover",
    "resolutions_along_prefix",
    "resolve",
    "rn_related",
    "SelfSimError",
    "SelfSimilaritySystem",
    "SetValuedFunctor",
    "SystemDocument",
    "tensor_equal",
    "tensor_functor",
    "tensor_modules",
    "UnionFind",
    "validate_category",
    "validate_coalgebra",
    "validate_functor",
    "validate_module",
    "ValidationError",
]

__version__ = "0.1.0"
