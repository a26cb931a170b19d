"""Exception hierarchy shared by all pisometry modules.

Every error maps to a CLI exit code; see ``pisometry.cli``.
"""


class PisometryError(Exception):
    """Base class for all library-specific errors."""


class ParseError(PisometryError):
    """A file or JSON document does not match the expected schema."""


class ShapeMismatch(PisometryError):
    """Operands have incompatible shapes."""


class TargetSourceMismatch(ShapeMismatch):
    """Composition attempted between maps whose target/source disagree."""


class PreconditionError(PisometryError):
    """Base class for violated operation preconditions."""


class NotHermitian(PreconditionError):
    """Matrix expected to be Hermitian is not (within tolerance)."""


class NotContractivePositive(PreconditionError):
    """Matrix expected to be positive semidefinite with norm <= 1 is not."""


class NotContraction(PreconditionError):
    """Operator expected to be a contraction has norm > 1."""


class NotPartialIsometry(PreconditionError):
    """Operator expected to be a partial isometry is not."""


class IllFormedMap(PreconditionError):
    """No well-defined lifted operator exists for the given module map."""


class NotInAlgebra(PreconditionError):
    """A product left the block structure of the coefficient algebra."""


class NotComplemented(PreconditionError):
    """The isometric submodule admits no projection onto it.

    Unreachable for the finite-dimensional modules implemented here (all
    closed submodules are complemented); retained for interface fidelity.
    """


class ConvergenceError(PisometryError):
    """The eigensolver failed to converge."""
