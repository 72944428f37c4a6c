"""Exception types raised by the package."""


class InvalidArgumentError(ValueError):
    """Bad argument to an evaluation or lookup (wrong dimension, unknown name)."""


class InvalidConfigError(ValueError):
    """Run or protocol parameters violate a documented constraint."""


class InvalidStateError(RuntimeError):
    """Internal state that should be impossible, e.g. non-finite fitness in a trace."""


class EvaluationOverflowError(ArithmeticError):
    """An objective returned a non-finite value."""
