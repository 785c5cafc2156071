"""Exception hierarchy shared by every module of the toolkit."""


class SakaguchiError(Exception):
    """Base class for all toolkit errors."""


class DivisionByNonUnit(SakaguchiError, ZeroDivisionError):
    pass


class NonvanishingInner(SakaguchiError, ValueError):
    pass


class PoleAtInput(SakaguchiError, ZeroDivisionError):
    pass


class ParamOutOfDisk(SakaguchiError, ValueError):
    pass


class BadMeasure(SakaguchiError, ValueError):
    pass


class TauOutOfRange(SakaguchiError, ValueError):
    pass


class MembershipCheckFailed(SakaguchiError):
    """A function that should lie in the Caratheodory class failed the numeric check.

    This signals a violated hypothesis (or a bug upstream), never a tolerance issue.
    """


class BadSpec(SakaguchiError, ValueError):
    pass


class DegenerateDivisor(SakaguchiError, ArithmeticError):
    pass


class DenominatorVanishes(SakaguchiError, ArithmeticError):
    pass


class ConditionsNotMet(SakaguchiError):
    pass


class HypothesisFailed(SakaguchiError):
    pass


class InsufficientCoefficients(SakaguchiError, ValueError):
    pass


class BoundViolation(SakaguchiError):
    """A numeric search found a value beyond a proven bound.

    ``dump`` carries a JSON-serialisable counterexample description.
    """

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump
