"""Exception types shared across the package.

Every validation or evaluation failure raises a subclass of
:class:`PlanningError`, so callers (and the CLI) can catch one base type and
report the concrete class name.
"""


class PlanningError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(PlanningError):
    """Operands do not share the same ambient dimension or array shape."""


class OddDimension(PlanningError):
    """The ambient dimension is odd (or < 2); the planner requires even d."""


class NonFinitePoint(PlanningError):
    """A coordinate is NaN or infinite."""


class DegenerateObstacles(PlanningError):
    """The two obstacles coincide; the line through them is undefined."""


class CollidingPoints(PlanningError):
    """Two entities of a configuration are closer than the distinctness tolerance."""

    def __init__(self, label_a: str, label_b: str, distance: float):
        super().__init__(
            f"points {label_a} and {label_b} coincide (distance {distance:.3e})"
        )
        self.pair = (label_a, label_b)
        self.distance = distance


class ObstacleMismatch(PlanningError):
    """Start and goal configurations do not share the exact same obstacle pair."""


class NotDesingularized(PlanningError):
    """Operation requires all point projections on the obstacle line to be distinct."""


class NotColinear(PlanningError):
    """Operation requires every point to lie on the obstacle line."""


class OutOfRangeTime(PlanningError):
    """A path/homotopy parameter lies outside [0, 1]."""


class InfeasibleInstanceSpec(PlanningError):
    """Random instance generation exhausted its rejection-sampling budget."""
