"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(EngineError):
    pass


class NonUnitary(EngineError):
    pass


class NotAntiHermitian(EngineError):
    pass


class C0Violation(EngineError):
    pass


class C1Violation(EngineError):
    pass


class NotAssociative(EngineError):
    pass


class DepthExceeded(EngineError):
    """A closure loop hit its pass budget before the dimension stabilized."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DecompositionFailure(EngineError):
    pass


class NotInLiePi(EngineError):
    pass


class ConfigurationViolation(EngineError):
    """A fluctuated Dirac operator broke an axiom; names the failing one."""

    def __init__(self, axiom, residual=None):
        msg = f"configuration axiom violated: {axiom}"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)
        self.axiom = axiom
        self.residual = residual


class ExceptionalSummand(EngineError):
    """Raised for H(3,O): exceptional summand unsupported."""


class ParseError(EngineError):
    def __init__(self, message, line=None, column=None, expected=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        exp = f" (expected {expected})" if expected else ""
        super().__init__(f"{message}{loc}{exp}")
        self.line = line
        self.column = column
        self.expected = expected


class ValidationError(EngineError):
    pass
