"""Exception hierarchy.

Every error belongs to one of three groups that the CLI maps onto exit
codes: ``InputError`` (2), ``BudgetExceeded`` (3) and everything else.
"""


class LVRoughError(Exception):
    """Base class for all package errors."""


class InputError(LVRoughError):
    """Malformed or inconsistent input."""


class BudgetExceeded(LVRoughError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class LawViolation(InputError):
    def __init__(self, message, law=None, witness=None):
        super().__init__(message)
        self.law = law
        self.witness = witness


class NotALattice(LawViolation):
    pass


class NotResiduated(LawViolation):
    pass


class LatticeTooLarge(BudgetExceeded):
    pass


class ParseError(InputError):
    pass


class UniverseMismatch(InputError):
    pass


class UnknownPoint(InputError):
    pass


class BoundViolation(InputError):
    pass


class PowersetTooLarge(BudgetExceeded):
    pass


class RelationSpaceTooLarge(BudgetExceeded):
    pass


class OperatorSpaceTooLarge(BudgetExceeded):
    pass


class RequiresMV(InputError):
    pass


class RequiresConstantUniverse(InputError):
    pass


class DirectionMismatch(InputError):
    pass


class H0Violated(LVRoughError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
