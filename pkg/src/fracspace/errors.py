"""Exception types shared across the package."""


class FracspaceError(Exception):
    """Base class for all package-specific errors."""


class MetricViolation(FracspaceError):
    """Distance table is not a metric; ``witness`` holds an offending triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonpositiveWeight(FracspaceError):
    pass


class LambdaNotMonotone(FracspaceError):
    pass


class LambdaAtZero(FracspaceError):
    """A dominating-function value of zero was requested in a denominator context."""


class InvalidField(FracspaceError):
    """A field function has the wrong length or non-finite entries."""


class InvalidDominatingSpec(FracspaceError):
    pass


class FamilyTooLarge(FracspaceError):
    pass


class DegenerateBall(FracspaceError):
    pass


class CoverGuaranteeFailed(FracspaceError):
    """Internal covering assertion failed; ``witness`` is an uncovered point index."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class KTooLarge(FracspaceError):
    pass


class ConfigInfeasible(FracspaceError):
    pass


class ZeroRbmo(FracspaceError):
    pass


class DominationDegenerate(FracspaceError):
    """Right-hand side vanished where the left-hand side did not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputFormatError(FracspaceError):
    """A file or generator spec could not be parsed."""
