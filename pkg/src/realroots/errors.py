"""Exception hierarchy shared by all modules."""


class RealRootsError(Exception):
    pass


class DyadicOverflowError(RealRootsError, OverflowError):
    """Exponent left the machine-word range."""


class UndefinedDivisionError(RealRootsError, ZeroDivisionError):
    """Divisor enclosure contains zero; refine precision before dividing."""


class PrecisionCapError(RealRootsError):
    """Working precision exceeded the configured cap.

    Raised when a predicate or a point selection stays inconclusive; on a
    square-free input this means the cap was too low, otherwise the input is
    most likely not square-free.  ``interval`` is the offending (a, b) pair and
    ``endpoint`` is set when a region endpoint could not be certified nonzero.
    """

    def __init__(self, message, interval=None, endpoint=None):
        super().__init__(message)
        self.interval = interval
        self.endpoint = endpoint


# Name used by the solver contract.
NonSquareFreeSuspected = PrecisionCapError


class DegenerateInputError(RealRootsError):
    pass


class OracleError(RealRootsError):
    pass


class ParseError(RealRootsError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class SolveAborted(RealRootsError):
    """A node or time budget ran out; ``stats`` holds the partial counters."""

    def __init__(self, message, stats=None, reason="timeout"):
        super().__init__(message)
        self.stats = stats
        self.reason = reason
