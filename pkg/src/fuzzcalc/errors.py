"""Exception types shared across the library."""


class FuzzcalcError(Exception):
    """Base class for all library errors."""


class OrderingError(FuzzcalcError):
    """Trapezoid/triangle parameters are not in nondecreasing order."""


class GridMismatch(FuzzcalcError):
    """Two fuzzy numbers live on different alpha grids."""


class InvalidResult(FuzzcalcError):
    """An operation produced endpoint sequences that are not a fuzzy number."""


class DimensionMismatch(FuzzcalcError):
    """Boxes of different dimension were combined."""


class NonpositiveWeight(FuzzcalcError):
    """Least-squares weights must be strictly positive."""


class InvalidPair(FuzzcalcError):
    """A profile/symmetric pair does not satisfy the valid-pair conditions."""


class DomainError(FuzzcalcError):
    """Zero lies in (or too close to) a divisor interval."""


class PoleError(FuzzcalcError):
    """Gamma evaluated at a nonpositive integer."""


class RangeError(FuzzcalcError):
    """An abscissa index is outside the sampled range."""


class SingularAtOrigin(FuzzcalcError):
    """The operator is singular at the left endpoint t = a."""


class ParameterError(FuzzcalcError):
    """An operator parameter is outside its admissible range."""


class DegenerateGrid(FuzzcalcError):
    """A sampled function has too few samples to differentiate."""


class SwitchingPointError(FuzzcalcError):
    """A differentiability switching point lies inside the integration range."""


class DomainViolation(FuzzcalcError):
    """f or the integral-equation bracket changed sign along the trajectory."""

    def __init__(self, message, alpha=None):
        super().__init__(message)
        self.alpha = alpha


class NonContraction(FuzzcalcError):
    """The Picard iteration is diverging."""

    def __init__(self, message, alpha=None):
        super().__init__(message)
        self.alpha = alpha


class ParseError(FuzzcalcError):
    """Malformed JSON input to the command line."""


class ValidationError(FuzzcalcError):
    """Parsed endpoint data does not describe a fuzzy number."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
