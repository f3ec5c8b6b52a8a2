"""Exception hierarchy shared by every module."""


class HypertraceError(Exception):
    pass


class ShapeMismatch(HypertraceError):
    """Two traces cannot be composed pointwise."""


class FiniteTracePresent(HypertraceError):
    """An operation defined only on infinite traces received a finite one."""


class FiniteTraceInAssignment(FiniteTracePresent):
    pass


class EmptyPosition(HypertraceError):
    pass


class UnknownVariable(HypertraceError):
    pass


class AlphabetMismatch(HypertraceError):
    pass


class IndexOutOfRange(HypertraceError):
    pass


class UnboundTraceVariable(HypertraceError):
    pass


class UnboundFreeVariable(HypertraceError):
    pass


class SizeMismatch(HypertraceError):
    pass


class FormulaSyntaxError(HypertraceError):
    def __init__(self, message, line, column, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class TraceFileError(FormulaSyntaxError):
    pass
