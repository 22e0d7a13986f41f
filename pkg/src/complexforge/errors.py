"""Exception hierarchy shared by all complexforge modules."""


class ComplexForgeError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(ComplexForgeError):
    """An operation received input outside its admissible set.

    ``residual`` carries the offending nonzero field (or array) when there
    is one, so callers can report *why* the input was rejected.
    """

    def __init__(self, message, residual=None, row=None):
        if row is not None:
            message = f"{message} (row {row})"
        super().__init__(message)
        self.residual = residual
        self.row = row


# exact_poly
class NotSkew(PreconditionError):
    pass


class SymmetryRequired(PreconditionError):
    pass


class ArityMismatch(ComplexForgeError):
    pass


# de_rham_potentials
class NotClosed(PreconditionError):
    pass


class NotSolenoidal(PreconditionError):
    pass


# elasticity_potentials
class NotInKernel(PreconditionError):
    pass


class DegenerateBox(ComplexForgeError):
    pass


# fa_toolbox
class SingularGram(ComplexForgeError):
    pass


class ShapeMismatch(ComplexForgeError):
    pass


class ComplexViolation(ComplexForgeError):
    pass


class NotInRange(PreconditionError):
    pass


class ZeroOperator(ComplexForgeError):
    pass


# grid_complex
class EmptyDomain(ComplexForgeError):
    pass


class DegenerateComplex(ComplexForgeError):
    pass


class DomainFormatError(ComplexForgeError):
    pass


class FieldFormatError(ComplexForgeError):
    pass
