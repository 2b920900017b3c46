"""Exception hierarchy shared by every module."""


class HyperspecError(Exception):
    """Base class for all library errors."""


class ParseError(HyperspecError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(HyperspecError, ValueError):
    pass


class UnknownVertex(HyperspecError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


class EmptyQuery(HyperspecError, ValueError):
    pass


class EmptyHypergraph(HyperspecError, ValueError):
    pass


class NoEdges(HyperspecError, ValueError):
    pass


class BadIndex(HyperspecError, IndexError):
    pass


class BadParams(HyperspecError, ValueError):
    pass


class InfeasibleParams(BadParams):
    pass


class NotAGraph(HyperspecError, ValueError):
    pass


class NotUniform(HyperspecError, ValueError):
    pass


class MismatchedUniformity(HyperspecError, ValueError):
    pass


class NotRegularUniform(HyperspecError, ValueError):
    pass


class SizeCapExceeded(HyperspecError, ValueError):
    pass


class DimensionCapExceeded(HyperspecError, ValueError):
    pass


class ConvergenceFailure(HyperspecError, RuntimeError):
    pass


class MalformedSpec(HyperspecError, ValueError):
    pass


class MalformedCut(MalformedSpec):
    pass


class DuplicateIndex(MalformedSpec):
    pass


class DisconnectedInput(HyperspecError, ValueError):
    pass


class NotIsolated(HyperspecError, ValueError):
    pass


class NotAWeakCut(HyperspecError, ValueError):
    pass


class TheoremViolation(HyperspecError, AssertionError):
    """A proven inequality or identity failed numerically or exactly."""
