"""Exception types raised by densecores."""


class DenseCoresError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DenseCoresError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SignConflictError(ParseError):
    """The same vertex pair was given both signs."""


class ContractViolation(DenseCoresError, ValueError):
    """A caller broke an operation's precondition."""


class UnknownVertexError(DenseCoresError, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


class NoSolutionError(DenseCoresError):
    """The requested structure does not exist in the input graph."""


class ResourceLimitError(DenseCoresError):
    """An output cap or an exhaustive-search guard was exceeded."""


class ConvergenceError(DenseCoresError):
    def __init__(self, message, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
