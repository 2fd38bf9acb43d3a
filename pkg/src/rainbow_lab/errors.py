"""Exception types shared across the package."""


class RainbowLabError(Exception):
    """Base class for all package errors."""


class InvalidEdgeError(RainbowLabError, ValueError):
    pass


class FormatError(RainbowLabError, ValueError):
    """A coloring or triple-system file could not be parsed."""


class UniformityError(RainbowLabError, ValueError):
    """An operation was called on a coloring of the wrong uniformity."""


class ParameterError(RainbowLabError, ValueError):
    pass


class DesignError(RainbowLabError, ValueError):
    pass


class GeometryError(RainbowLabError, ValueError):
    pass


class PreconditionError(RainbowLabError, ValueError):
    """Raised when an input violates a documented precondition.

    ``witness`` carries the offending object when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
