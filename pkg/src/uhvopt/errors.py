"""Exception types shared across the package."""


class UhvoptError(Exception):
    """Base class for package-specific failures."""


class NumericError(UhvoptError):
    """A computation produced non-finite values or lost all precision."""


class UnsupportedOperationError(UhvoptError):
    """The requested operation is not available for this problem."""


class DegenerateConfigurationError(UhvoptError):
    """A solution-set configuration that cannot be disambiguated.

    Carries the indices of the colliding objective vectors.
    """

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = tuple(indices)
