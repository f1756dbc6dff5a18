"""Exception types. Each class name doubles as the error name shown by the CLI."""


class QPError(Exception):
    """Base class for all domain errors raised by qpmult."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ZeroPolynomial(QPError, ValueError):
    pass


class EndpointIsRoot(QPError, ValueError):
    pass


class RankDeficient(QPError, ValueError):
    pass


class InvalidField(QPError, ValueError):
    """Defining data is malformed (not monic, degree < 2, bad interval)."""


class Reducible(QPError, ValueError):
    pass


class IrreducibilityUndecided(QPError, ValueError):
    pass


class NotIsolating(QPError, ValueError):
    pass


class NoRealRoot(QPError, ValueError):
    pass


class DivisionByZero(QPError, ZeroDivisionError):
    pass


class FieldMismatch(QPError, ValueError):
    pass


class NotSquarefree(QPError, ValueError):
    pass


class OutOfRange(QPError, ValueError):
    pass


class NotAUnit(QPError, ValueError):
    pass


class TorsionOnly(QPError, ValueError):
    pass


class GeneratorsRequired(QPError, ValueError):
    def __init__(self, required: int, message: str | None = None):
        self.required = required
        super().__init__(message or f"{required} unit generator(s) must be supplied")


class WrongGeneratorCount(QPError, ValueError):
    pass


class StepCapExceeded(QPError, RuntimeError):
    pass


class NotQuasiperiodic(QPError, ValueError):
    pass


class RankUnsupported(QPError, ValueError):
    pass


class IndexBoundExceeded(QPError, RuntimeError):
    pass


class NotAMultiplier(QPError, ValueError):
    pass


class NotASymmetry(QPError, ValueError):
    pass


class NotUnimodular(QPError, ValueError):
    pass


class NotSemiconjugate(QPError, ValueError):
    pass


class NotConjugate(QPError, ValueError):
    pass


class ModelMismatch(QPError, ValueError):
    """Operation needs a different flow model (algebraic vs formal)."""


class ParseError(QPError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class InternalInconsistency(QPError, RuntimeError):
    """A cross-check between two independent computations failed."""
