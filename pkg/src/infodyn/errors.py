"""Exception hierarchy shared by all infodyn modules."""


class InfoDynError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(InfoDynError, ValueError):
    pass


class NoConvergence(InfoDynError, ArithmeticError):
    pass


class NotNormalized(InfoDynError, ValueError):
    pass


class BadIndex(InfoDynError, IndexError):
    pass


class WrongDimension(InfoDynError, ValueError):
    pass


class DimensionMismatch(InfoDynError, ValueError):
    pass


class NegativeEigenvalue(InfoDynError, ArithmeticError):
    pass


class OutOfRange(InfoDynError, ArithmeticError):
    pass


class RankViolation(InfoDynError, ArithmeticError):
    pass


class UnsupportedSize(InfoDynError, ValueError):
    pass


class MalformedStateFile(InfoDynError, ValueError):
    """The state file could not be parsed into a valid pure state."""
