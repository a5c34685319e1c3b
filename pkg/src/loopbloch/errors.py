"""Exception types raised across the package."""


class NoSteadyState(ValueError):
    """The loop phase drifts in time, so no stationary state is defined."""


class NonUniqueSteadyState(ValueError):
    """The generator kernel is more than one-dimensional.

    The minimal-norm trace-one candidate is kept on ``result`` so callers can
    still inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class PoleAtZero(ZeroDivisionError):
    """A two-photon path amplitude has a vanishing resonance denominator."""


class IntegrationError(RuntimeError):
    """Adaptive integration stopped early; ``t_reached`` is the last good time."""

    def __init__(self, message, t_reached):
        super().__init__(f"{message} (reached t={t_reached!r})")
        self.t_reached = t_reached


class ConfigError(ValueError):
    """Malformed configuration text, with a 1-based line/column position."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
