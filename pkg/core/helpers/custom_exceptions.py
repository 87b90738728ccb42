class RombergError(Exception):
    """Base exception class for all engine errors.

    Attributes:
        message (str): Human-readable error description.
        details (dict, optional): Offending values, for logs and CLI reports.
    """

    def __init__(self, message: str, details: dict | None = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self):
        if self.details:
            extra = ", ".join(f"{key}={value!r}" for key, value in self.details.items())
            return f"{self.message} ({extra})"
        return self.message


class InvalidParameterError(RombergError):
    """Raised when an input violates an operation precondition.

    Example:
        >>> raise InvalidParameterError("n must be at least 4", {"n": 2})
    """


class DimensionMismatchError(RombergError):
    """Raised when state, driving noise or test function dimensions disagree.

    Example:
        >>> raise DimensionMismatchError("state has 1 coordinate, model expects 2")
    """


class GridMismatchError(RombergError):
    """Raised when a coarse grid is not embedded in the fine grid it is coarsened from.

    Example:
        >>> raise GridMismatchError("node 1/3 missing from fine grid")
    """


class OracleUnavailableError(RombergError):
    """Raised when no reference value can be produced for a model or payoff.

    Example:
        >>> raise OracleUnavailableError("quadrature returned nan")
    """
