class CircJLError(Exception):
    """Base class for errors raised by circjl."""


class InvalidDimensionError(CircJLError, ValueError):
    pass


class InvalidConfigurationError(CircJLError, ValueError):
    pass


class PreconditionError(CircJLError, ValueError):
    pass


class NumericalFailureError(CircJLError, ArithmeticError):
    pass
