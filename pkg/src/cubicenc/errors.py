"""Exception hierarchy shared by every stage of the pipeline."""


class CubicEncError(Exception):
    """Base class for all errors raised by :mod:`cubicenc`."""


class MissingVariable(CubicEncError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no value assigned to variable {self.name!r}"


class IndexZero(CubicEncError, ValueError):
    pass


class IndexOutOfRange(CubicEncError, IndexError):
    pass


class IndexViolation(CubicEncError, ValueError):
    pass


class DegreeTooHigh(CubicEncError, ValueError):
    pass


class ProofInvalid(CubicEncError, ValueError):
    pass


class WindowTooSmall(CubicEncError, ValueError):
    def __init__(self, window, value):
        super().__init__(f"value {value} needs more Fibonacci digits than window K={window}")
        self.window = window
        self.value = value


class NotSatisfying(CubicEncError, ValueError):
    pass


class AmbiguousJustification(CubicEncError, ValueError):
    pass


class ParseError(CubicEncError, ValueError):
    pass
