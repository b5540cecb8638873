"""Exception hierarchy shared across the library.

Exit-code mapping used by the CLI: InputError -> 2, CapacityError -> 3,
failed reproduction claims -> 1.
"""


class RhoRadiiError(Exception):
    """Base class for all library errors."""


class InputError(RhoRadiiError):
    """Invalid input: bad shapes, non-finite entries, parameter domain."""


class CapacityError(RhoRadiiError):
    """Requested computation exceeds a configured size limit."""


class PoleError(RhoRadiiError):
    """A resolvent was evaluated at (or too close to) a pole."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class InternalError(RhoRadiiError):
    """Numerical inconsistency that indicates a bug, with diagnostics."""
