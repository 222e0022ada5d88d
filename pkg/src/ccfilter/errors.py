"""Exception hierarchy.

Data problems and numerical problems are kept in separate branches so the
command line can map them onto distinct exit codes.
"""


class CcfError(Exception):
    """Base class for every error raised by this package."""


class DataError(CcfError):
    """Input data is malformed or inconsistent."""


class NumericalError(CcfError):
    """A computation left its valid numerical domain."""


class GimbalLock(NumericalError):
    """Pitch is too close to +-90 degrees for the Euler parameterization."""


class DegenerateVector(NumericalError):
    """A reference vector is (numerically) zero, so no angle can be formed."""


class NumericalFailure(NumericalError):
    """A filter state became non-finite or lost positive semidefiniteness."""


class EmptyDataset(DataError):
    pass


class NonMonotonicTime(DataError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class LengthMismatch(DataError):
    pass


class EmptyTrack(DataError):
    pass


class SpecViolation(DataError):
    """A trajectory or sensor-model description is invalid."""


class MissingColumn(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None, column=None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.line = line
        self.column = column
