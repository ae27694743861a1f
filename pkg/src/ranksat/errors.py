"""Exception classes shared across the package."""


class RanksatError(Exception):
    """Base class for all package errors."""


class NonPrimeCharacteristic(RanksatError):
    pass


class ReducibleModulus(RanksatError):
    pass


class DegreeOutOfRange(RanksatError):
    pass


class DivisionByZero(RanksatError, ZeroDivisionError):
    pass


class FieldMismatch(RanksatError):
    pass


class OddCharacteristic(RanksatError):
    pass


class BudgetExceeded(RanksatError):
    """An enumeration or search exceeded its configured budget."""


class InvalidRho(RanksatError):
    pass


class ShiftNotCoprime(RanksatError):
    pass


class InvalidParams(RanksatError):
    pass


class RankTooSmall(RanksatError):
    pass


class InvalidCaseParams(RanksatError):
    pass


class InternalInconsistency(RanksatError):
    """A constructive solver failed its own post-check.  Indicates a bug."""


class CenterInsideLinearSet(RanksatError):
    pass


class CenterOnHyperplane(RanksatError):
    pass


class UnknownName(RanksatError):
    pass


class MissingBinding(RanksatError):
    pass


class DivisionNotExact(RanksatError):
    pass


class InvalidBeta(RanksatError):
    pass


class IdentityViolation(RanksatError):
    """A polynomial identity check failed; carries the counterexample point."""


class AssertionFailed(RanksatError):
    """A mechanically checked claim was falsified at the tested parameters."""


class NoWitness(RanksatError):
    pass
