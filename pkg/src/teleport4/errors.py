"""Exception hierarchy shared by the library and the CLI."""


class Teleport4Error(Exception):
    """Base class for every error raised by teleport4."""


# -- linear algebra -------------------------------------------------------


class LabelMismatch(Teleport4Error, ValueError):
    pass


class SingularMatrix(Teleport4Error, ValueError):
    pass


class NormExceeded(Teleport4Error, ValueError):
    pass


class ConvergenceError(Teleport4Error, RuntimeError):
    """Jacobi iteration hit its sweep cap. Treated as an internal error."""


# -- channels -------------------------------------------------------------


class UnknownName(Teleport4Error, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class BadParameter(Teleport4Error, ValueError):
    pass


class ParseError(Teleport4Error, ValueError):
    pass


class NormalizationError(Teleport4Error, ValueError):
    pass


# -- protocol -------------------------------------------------------------


class NotUnitary(Teleport4Error, ValueError):
    pass


class SingularOperator(Teleport4Error, ValueError):
    pass


class OracleMismatch(Teleport4Error, AssertionError):
    """Two independent computations of the same quantity disagreed."""
