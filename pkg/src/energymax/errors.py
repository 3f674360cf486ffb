"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """A precondition on an argument was violated."""


class DegenerateInputError(ValueError):
    """Input is valid in type but degenerate (e.g. a zero field where a direction is needed)."""


class NumericalBreakdownError(ArithmeticError):
    """NaN or Inf appeared during an iterative computation."""


class NonConvergenceError(RuntimeError):
    """An iteration hit its budget. ``report`` carries whatever partial state was available."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FieldFormatError(ValueError):
    """A field file is malformed or does not match the expected domain."""
