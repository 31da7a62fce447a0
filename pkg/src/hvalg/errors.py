"""Exception hierarchy shared by every module."""


class HVError(Exception):
    """Base class for all library errors."""


class DivisionByZero(HVError, ZeroDivisionError):
    pass


class SpecializationPole(HVError, ZeroDivisionError):
    pass


class RankMismatch(HVError, ValueError):
    pass


class InactiveCentralKey(HVError, ValueError):
    pass


class VariantMismatch(HVError, ValueError):
    pass


class GateViolation(HVError, ValueError):
    """A lambda-gated object was used outside its gate."""


class OutOfWindow(HVError, KeyError):
    pass


class LambdaMinusOne(HVError, ValueError):
    pass


class NonzeroL2(HVError, ValueError):
    pass


class UnstableTruncation(HVError, RuntimeError):
    pass


class ParseError(HVError, SyntaxError):
    """Grammar error carrying a 1-based line and column."""

    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col
        self.pos = pos
