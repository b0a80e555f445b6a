"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class ArithRankError(Exception):
    exit_code = 1


class ParseError(ArithRankError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class EmptyIdeal(ArithRankError):
    pass


class DualUndefined(ArithRankError):
    pass


class NotSeparable(ArithRankError):
    pass


class NotClassified(ArithRankError):
    exit_code = 3


class InvalidField(ArithRankError):
    pass


class CharDependence(ArithRankError):
    exit_code = 2


class InconsistentParams(ArithRankError):
    pass


class ConstructionFailed(ArithRankError):
    exit_code = 2


class NotDisjoint(ArithRankError):
    pass


class NotInGenericSet(ArithRankError):
    exit_code = 2


class OutOfScope(ArithRankError):
    exit_code = 3


class PreconditionError(ArithRankError):
    pass


class VerificationFailed(ArithRankError):
    exit_code = 2


class CertificateError(VerificationFailed):
    def __init__(self, message, step=None, difference=None):
        self.step = step
        self.difference = difference
        super().__init__(message)


class BudgetExhausted(ArithRankError):
    exit_code = 4
