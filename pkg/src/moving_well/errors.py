"""Exception types shared across the package."""


class MovingWellError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(MovingWellError, ValueError):
    """A parameter violates a documented precondition."""


class HorizonExceededError(MovingWellError):
    """A query was made at or beyond the time where the well width vanishes.

    Carries ``t_star``, the time at which the width hits zero.
    """

    def __init__(self, t_star: float, t: float):
        self.t_star = t_star
        self.t = t
        super().__init__(
            f"well width is non-positive at t={t!r}; it vanishes at t*={t_star!r}"
        )


class QuadratureBudgetError(MovingWellError):
    """Adaptive quadrature exhausted its panel budget before converging.

    Carries the best available ``estimate`` and its ``error`` bound.
    """

    def __init__(self, estimate, error: float, panels: int):
        self.estimate = estimate
        self.error = error
        self.panels = panels
        super().__init__(
            f"quadrature did not converge within {panels} panels "
            f"(best estimate {estimate!r}, error bound {error:.3e})"
        )


class InvalidProbeError(MovingWellError, ValueError):
    """A residual probe sits too close to a wall or to the validity horizon."""


class AuditFailedError(MovingWellError):
    """Neither candidate phase convention passed the audit.

    This signals an implementation bug, not a physics ambiguity.
    """
