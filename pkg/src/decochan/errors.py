"""Exception hierarchy shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all decochan errors."""


class DimensionMismatch(ToolkitError):
    """Operands have incompatible shapes or dimensions."""


class NonHermitian(ToolkitError):
    """A matrix required to be Hermitian violates the symmetry tolerance."""


class NegativeEigenvalue(ToolkitError):
    """An eigenvalue fell below the numerical positivity floor."""


class LengthMismatch(ToolkitError):
    """Two spectra that must have equal length do not."""


class BadParameter(ToolkitError):
    """A channel or formula parameter is outside its admissible range."""


class BadPartition(ToolkitError):
    """An index partition does not cover the basis exactly once."""


class NotConverged(ToolkitError):
    """The optimizer exhausted its iteration budget.

    Carries the best result found so far in the ``result`` attribute.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
