"""Finite Γ-crossed modules, their graded categorical groups, and equivariant extensions."""

from .cohomology import EquivariantModule, H2, coboundary, enumerate_b2, enumerate_z2, h2, is_cocycle2
from .crossed import (
    CrossedModuleHom,
    CrossedMorphism,
    GammaCrossedModule,
    compose_morphisms,
    from_central_surjection,
    from_conjugation,
    from_inclusion,
    from_module,
    validate_crossed_module,
)
from .errors import (
    EqCrossError,
    InvariantViolation,
    PreconditionError,
    Report,
    SearchLimitError,
    StructuralError,
)
from .extensions import (
    Extension,
    classify,
    crossed_product,
    equivalent,
    ext_gamma,
    functor_of_extension,
    induced_psi,
    obstruction_vanishes,
    oracle_check,
    raw_extensions,
    torsor_count_check,
    validate_extension,
)
from .formats import emit, parse_instance
from .graded import (
    GCGMorphism,
    GradedCatGroup,
    GradedMonoidalFunctor,
    build_P,
    crossed_module_of,
    dis_gamma,
    enumerate_functors,
    factor_set_of,
    functor_from_triple,
    homotopic,
    triple_of_functor,
)
from .groups import FiniteGroup, GammaAction, GammaGroup, GroupHom, cyclic, direct_product, validate_group
from .naming import label

__version__ = "0.1.0"

__all__ = [
    "build_P",
    "classify",
    "coboundary",
    "compose_morphisms",
    "crossed_module_of",
    "crossed_product",
    "CrossedModuleHom",
    "CrossedMorphism",
    "cyclic",
    "direct_product",
    "dis_gamma",
    "emit",
    "enumerate_b2",
    "enumerate_functors",
    "enumerate_z2",
    "EqCrossError",
    "equivalent",
    "EquivariantModule",
    "ext_gamma",
    "Extension",
    "factor_set_of",
    "FiniteGroup",
    "from_central_surjection",
    "from_conjugation",
    "from_inclusion",
    "from_module",
    "functor_from_triple",
    "functor_of_extension",
    "GammaAction",
    "GammaCrossedModule",
    "GammaGroup",
    "GCGMorphism",
    "GradedCatGroup",
    "GradedMonoidalFunctor",
    "GroupHom",
    "H2",
    "h2",
    "homotopic",
    "induced_psi",
    "InvariantViolation",
    "is_cocycle2",
    "label",
    "obstruction_vanishes",
    "oracle_check",
    "parse_instance",
    "PreconditionError",
    "raw_extensions",
    "Report",
    "SearchLimitError",
    "StructuralError",
    "torsor_count_check",
    "triple_of_functor",
    "validate_crossed_module",
    "validate_extension",
    "validate_group",
]
