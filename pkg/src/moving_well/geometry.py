"""Geometry of a 1D infinite well whose walls move at constant velocities.

The well occupies ``[x_left(t), x_right(t)]`` with

    x_left(t)  = u_left * t
    x_right(t) = a + u_right * t

so the width is ``a + delta*t`` with ``delta = u_right - u_left``. Everything
downstream is phrased in terms of the dimensionless scale factor

    L(t) = 1 + delta*t/a

and the co-moving coordinate ``xbar = (x - u_left*t) / L(t)``, which pins the
walls to 0 and ``a`` for all valid times. Velocities are signed, so a single
parametrization covers expanding, contracting and rigidly translating wells.

A contracting well (``delta < 0``) is only defined up to the horizon
``t* = a/|delta|`` where the width vanishes; queries at or past the horizon
raise :class:`~moving_well.errors.HorizonExceededError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import HorizonExceededError, InvalidParameterError


@dataclass(frozen=True)
class PhysicalConstants:
    """Planck constant and particle mass; defaults are natural units."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise InvalidParameterError(f"hbar must be finite and > 0, got {self.hbar}")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise InvalidParameterError(f"mass must be finite and > 0, got {self.mass}")


@dataclass(frozen=True)
class WellGeometry:
    """Immutable description of the two-moving-wall well.

    All operations are pure; instances are safe to share between tasks.
    """

    a: float
    u_left: float = 0.0
    u_right: float = 0.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise InvalidParameterError(f"initial width a must be > 0, got {self.a}")
        if not (math.isfinite(self.u_left) and math.isfinite(self.u_right)):
            raise InvalidParameterError("wall velocities must be finite")

    @property
    def delta(self) -> float:
        """Rate of change of the width, u_right - u_left."""
        return self.u_right - self.u_left

    @property
    def L_dot(self) -> float:
        """Constant time derivative of the scale factor, delta / a."""
        return self.delta / self.a

    def width(self, t: float) -> float:
        return self.a + self.delta * t

    def require_valid(self, t: float) -> None:
        """Raise HorizonExceededError unless the width is positive at ``t``."""
        if not math.isfinite(t):
            raise InvalidParameterError(f"time must be finite, got {t}")
        if self.width(t) <= 0.0:
            raise HorizonExceededError(t_star=-self.a / self.delta, t=t)

    def scale_factor(self, t: float) -> float:
        """L(t) = width(t)/a; equals 1 at t=0 and is affine in t."""
        self.require_valid(t)
        return 1.0 + self.delta * t / self.a

    def wall_positions(self, t: float) -> tuple[float, float]:
        self.require_valid(t)
        return (self.u_left * t, self.a + self.u_right * t)

    def to_comoving(self, x, t: float):
        """Map lab coordinate(s) to the fixed domain [0, a]."""
        L = self.scale_factor(t)
        return (x - self.u_left * t) / L

    def from_comoving(self, xbar, t: float):
        """Inverse of :meth:`to_comoving`; exact round trip up to rounding."""
        L = self.scale_factor(t)
        return xbar * L + self.u_left * t

    def validity_horizon(self) -> float:
        """Time at which the width vanishes; ``math.inf`` if it never does."""
        if self.delta < 0:
            return self.a / abs(self.delta)
        return math.inf


def make_geometry(
    a: float,
    u_left: float,
    u_right: float,
    constants: PhysicalConstants | None = None,
) -> WellGeometry:
    """Validating constructor mirroring the WellGeometry field order."""
    return WellGeometry(a, u_left, u_right, constants or PhysicalConstants())
