"""Exception hierarchy shared by all modules."""


class CommdetError(Exception):
    """Base class for every error raised by this package."""


class WindowError(CommdetError, IndexError):
    """A multi-index or degree lies outside the truncation window."""


class ShapeError(CommdetError, ValueError):
    """Matrix or operator shapes (or shifts) are incompatible."""


class StructureError(CommdetError, ValueError):
    """An input lacks a required structure, e.g. is not Hermitian."""


class TruncationError(CommdetError):
    """No exact (in-window) data is available for the requested degrees."""


class GradingError(CommdetError, ValueError):
    """An expression is not degree-homogeneous under the model grading."""


class ParameterError(CommdetError, ValueError):
    """A model or command parameter is out of its admissible range."""


class ValidationError(CommdetError, ValueError):
    """An input tuple fails a required property (commuting, normal, ...)."""


class CapabilityError(CommdetError):
    """The requested route is not available for this input."""


class ParseError(CommdetError, ValueError):
    """Syntax error in a word expression; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
