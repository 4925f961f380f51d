"""Exception hierarchy shared by the solver modules."""


class TropError(Exception):
    """Base class for every error raised by tropdiff."""


class NonHomogeneousDerivative(TropError, ValueError):
    """Raised when differentiating an equation whose free term is finite."""


class ContractError(TropError, ValueError):
    """A function was called outside its documented precondition."""


class InternalBoundViolation(TropError, AssertionError):
    """A proven runtime bound was exceeded; indicates a bug or a gap in the theory."""


class BudgetExceeded(TropError):
    """Brute-force enumeration would exceed the configured candidate budget."""


class ResultTooLarge(TropError, OverflowError):
    """A closed-form bound does not fit in a signed 64-bit integer."""


class InvalidWitness(TropError, ValueError):
    """A support does not encode a truth assignment of the reduced system."""


class TooManyVariables(TropError, ValueError):
    """Truth-table enumeration refused for too many variables."""


class ParseError(TropError, ValueError):
    """Syntax or range error in a text input, with a 1-based position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class DimacsError(ParseError):
    pass


class MalformedHeader(DimacsError):
    pass


class ClauseTooLong(DimacsError):
    pass


class IndexOutOfRange(DimacsError):
    pass
