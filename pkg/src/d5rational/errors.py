"""Exception hierarchy shared by every module."""


class D5Error(Exception):
    """Base class for all package errors."""


class ParseError(D5Error, ValueError):
    def __init__(self, message, token=None, position=None):
        super().__init__(message)
        self.token = token
        self.position = position


class DegreeError(D5Error, ArithmeticError):
    """A polynomial grew beyond the configured degree cap."""


class ZeroDivisor(D5Error, ZeroDivisionError):
    """Division by an element that is identically zero."""


class ParamsError(D5Error, ValueError):
    """Parameter vector off the hyperplane a0+a1+2a2+2a3+a4+a5 = 1."""


class NotASolution(D5Error, ValueError):
    pass


class ChartError(D5Error):
    """Singular chart map or malformed chart value."""


class BranchError(D5Error):
    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class WordError(D5Error, ValueError):
    pass


class NormalizationError(D5Error):
    pass
