"""Exception hierarchy shared by every module of the package."""


class HasseError(Exception):
    """Base class for all errors raised by :mod:`hassepairs`."""


# field arithmetic
class NonPrimeBase(HasseError, ValueError):
    pass


class FieldOverflow(HasseError, OverflowError):
    pass


class DivisionByZero(HasseError, ZeroDivisionError):
    pass


class FieldMismatch(HasseError, TypeError):
    pass


class ZeroLinearCoefficient(HasseError, ValueError):
    pass


class FieldTooLarge(HasseError, ValueError):
    pass


class ZeroPolynomial(HasseError, ValueError):
    pass


class MalformedDecimal(HasseError, ValueError):
    pass


# pairs
class EqualInputs(HasseError, ValueError):
    pass


class NotHasse(HasseError, ValueError):
    pass


class NonNegative(HasseError, ValueError):
    pass


class HasseBoundViolated(HasseError, ValueError):
    pass


class NotFundamental(HasseError, ValueError):
    pass


class NotOddPair(HasseError, ValueError):
    pass


class NotEvenSupersingular(HasseError, ValueError):
    pass


class NotPrimePower(HasseError, ValueError):
    pass


# curves
class SingularModel(HasseError, ValueError):
    pass


class TargetOutOfHasseWindow(HasseError, ValueError):
    pass


# modular polynomials and graphs
class MissingFile(HasseError, FileNotFoundError):
    pass


class MalformedLine(HasseError, ValueError):
    def __init__(self, path, lineno, text):
        super().__init__(f"{path}:{lineno}: malformed line {text!r}")
        self.path = path
        self.lineno = lineno


class NonMonic(HasseError, ValueError):
    pass


class CharacteristicDegree(HasseError, ValueError):
    pass


class UnknownDegree(HasseError, ValueError):
    pass


class VertexEscapes(HasseError, RuntimeError):
    pass


class EmptySet(HasseError, ValueError):
    pass


class MixedTypes(HasseError, ValueError):
    pass


class DegreeSetMismatch(HasseError, ValueError):
    pass


class UnequalCycles(HasseError, RuntimeError):
    pass


class BadDiscriminant(HasseError, ValueError):
    pass


# density
class BoundTooLarge(HasseError, ValueError):
    pass


class TableTooSmall(HasseError, ValueError):
    pass
