class TableFormatError(ValueError):
    """Malformed operation-table input (ragged rows, out-of-range entries...)."""


class CongruenceError(ValueError):
    """A partition handed to quotient() is not a congruence."""


class SizeCapError(RuntimeError):
    """A desk-scale routine was invoked beyond its documented size cap."""


class FreeAlgebraOverflow(RuntimeError):
    """Free-algebra closure exceeded its element cap.

    Carries the partial closure so callers can inspect how far it got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
