"""Numerics for partial isometries on Hilbert spaces and Hilbert C*-modules."""

from .errors import (
    ConvergenceError,
    IllFormedMap,
    NotComplemented,
    NotContraction,
    NotContractivePositive,
    NotHermitian,
    NotInAlgebra,
    NotPartialIsometry,
    ParseError,
    PisometryError,
    PreconditionError,
    ShapeMismatch,
    TargetSourceMismatch,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    adjoint,
    eigenspace_at_one,
    frobenius,
    hermitian_eigensystem,
    orthogonal_projection,
    psd_order_leq,
    spectral_norm,
)
from .modules import (
    CStarAlgebra,
    HilbertModule,
    ModuleElement,
    ModuleMap,
    Submodule,
    complement,
    contained_partial_isometry_mod,
    is_partial_isometry_mod,
    isometric_submodule,
    module_inner,
    product_invariance_criterion,
)
from .operators import (
    ContainedPI,
    OperatorClass,
    ProductCriterion,
    classify,
    contained_partial_isometry,
    dot_compose,
    isometric_subspace,
    product_criterion,
)
from .partial_functions import (
    FiniteSet,
    PartialFn,
    classify_pdf,
    compose_pdf,
    to_partial_isometry,
)
from .pdi import (
    PartiallyDefinedIsometry,
    compose_pdi,
    contained_pdi,
    contained_composition_agrees,
    initial_submodule,
)
from .suites import Report, SuiteConfig, SuiteResult, run, run_suite

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "IllFormedMap",
    "NotComplemented",
    "NotContraction",
    "NotContractivePositive",
    "NotHermitian",
    "NotInAlgebra",
    "NotPartialIsometry",
    "ParseError",
    "PisometryError",
    "PreconditionError",
    "ShapeMismatch",
    "TargetSourceMismatch",
    "DEFAULT_TOL",
    "Subspace",
    "Tolerance",
    "adjoint",
    "eigenspace_at_one",
    "frobenius",
    "hermitian_eigensystem",
    "orthogonal_projection",
    "psd_order_leq",
    "spectral_norm",
    "CStarAlgebra",
    "HilbertModule",
    "ModuleElement",
    "ModuleMap",
    "Submodule",
    "complement",
    "contained_partial_isometry_mod",
    "is_partial_isometry_mod",
    "isometric_submodule",
    "module_inner",
    "product_invariance_criterion",
    "ContainedPI",
    "OperatorClass",
    "ProductCriterion",
    "classify",
    "contained_partial_isometry",
    "dot_compose",
    "isometric_subspace",
    "product_criterion",
    "FiniteSet",
    "PartialFn",
    "classify_pdf",
    "compose_pdf",
    "to_partial_isometry",
    "PartiallyDefinedIsometry",
    "compose_pdi",
    "contained_pdi",
    "contained_composition_agrees",
    "initial_submodule",
    "Report",
    "SuiteConfig",
    "SuiteResult",
    "run",
    "run_suite",
]
