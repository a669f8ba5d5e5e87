"""Exception hierarchy shared by all modules."""


class SpectralSchwarzError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(SpectralSchwarzError, ValueError):
    """Argument outside the documented domain (shape, finiteness, unit disc, ranges)."""


class NumericalFailureError(SpectralSchwarzError, ArithmeticError):
    """A numerical routine did not converge or hit a near-singular solve."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class IllConditionedStructureError(SpectralSchwarzError):
    """Jordan structure cannot be decided at the requested tolerance.

    Raised when a singular value used by a rank probe falls inside the
    ambiguity band around the threshold. Pass exactly structured input or a
    different tolerance.
    """

    def __init__(self, message, matrix=None, eigenvalue=None):
        super().__init__(message)
        self.matrix = matrix
        self.eigenvalue = eigenvalue


class PreconditionError(SpectralSchwarzError):
    """A check was called on input that does not meet its hypotheses."""


class GeneratorViolationError(SpectralSchwarzError):
    """A generated map left the spectral unit ball.

    This signals a defect in a map generator, never a violated inequality.
    """

    def __init__(self, message, path=None, radius=None):
        super().__init__(message)
        self.path = path
        self.radius = radius


class UnboundedImageError(SpectralSchwarzError):
    """The Moebius image of the unit circle passes through infinity."""


class DegeneratePairError(InvalidInputError):
    """Two points that must be distinct coincide."""
