"""Exactly evaluable homotopies that straighten a query pair onto the obstacle line.

Two elementary stages, each a map (configuration, time in [0,1]) -> configuration
that never moves the obstacles and never creates a collision:

* :func:`desingularize` nudges robot j along the obstacle-line direction by
  ``t * j * epsilon_bar(C)``, splitting coincident projections apart without
  letting distinct ones merge. Configurations whose projections are already
  all distinct are returned unchanged.
* :func:`flatten` retracts each robot straight onto its projection; it
  requires all projections distinct (otherwise two robots would land on the
  same line point at t=1).

:func:`sigma` concatenates the two on equal time halves, applied to both
members of a query pair simultaneously, ending in a pair of colinear
configurations on the shared obstacle line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .configspace import (
    Configuration,
    QueryPair,
    cp_count,
    epsilon_bar,
    validate_query_pair,
)
from .errors import NotDesingularized, OutOfRangeTime
from .geometry import DEFAULT_TOL, project_point

_STAGE_KINDS = ("desingularize", "flatten", "composite")


@dataclass(frozen=True)
class HomotopyStage:
    """Descriptor of one deformation stage and the projection count it starts from."""

    kind: str
    source_stratum: int

    def __post_init__(self):
        if self.kind not in _STAGE_KINDS:
            raise ValueError(f"kind must be one of {_STAGE_KINDS}, got {self.kind!r}")
        if self.source_stratum < 2:
            raise ValueError(f"stratum must be >= 2, got {self.source_stratum}")


def _check_time(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeTime(f"homotopy time must lie in [0, 1], got {t!r}")
    return t


def desingularize(
    C: Configuration, t: float, proj_tol: float = DEFAULT_TOL
) -> Configuration:
    """Separate coincident line projections by shifting robot j a fraction t
    of ``j * epsilon_bar(C)`` along the line direction.

    Identity (the same object) when all n+2 projections are already distinct.
    Obstacles and the oriented line are untouched; at t=1 the result always
    has n+2 distinct projections.
    """
    t = _check_time(t)
    if cp_count(C, proj_tol) == C.n + 2:
        return C
    step = epsilon_bar(C, proj_tol)
    direction = C.line().direction
    shifts = np.multiply.outer(np.arange(1, C.n + 1, dtype=float) * step, direction)
    return Configuration(C.obstacles, C.robots + t * shifts)


def flatten(C: Configuration, t: float, proj_tol: float = DEFAULT_TOL) -> Configuration:
    """Move each robot a fraction t of the way to its orthogonal projection
    on the obstacle line.

    Requires all n+2 projections distinct (raises NotDesingularized
    otherwise); then projections are preserved for every t, so no collision
    can occur, and at t=1 the configuration is colinear. Obstacles are
    untouched.
    """
    t = _check_time(t)
    if cp_count(C, proj_tol) < C.n + 2:
        raise NotDesingularized(
            "flatten requires all point projections on the obstacle line to be distinct"
        )
    line = C.line()
    residual = project_point(line, C.robots) - C.robots
    return Configuration(C.obstacles, C.robots + t * residual)


def sigma(
    P: QueryPair, t: float, proj_tol: float = DEFAULT_TOL
) -> tuple[Configuration, Configuration]:
    """Deform a query pair onto the shared obstacle line: desingularize both
    components on t in [0, 1/2], flatten both on t in [1/2, 1].

    At t=0 this is the pair itself; at t=1 both components are colinear on
    the common line. Obstacles are fixed throughout.
    """
    validate_query_pair(P)
    t = _check_time(t)
    if t <= 0.5:
        u = 2.0 * t
        return (
            desingularize(P.start, u, proj_tol),
            desingularize(P.goal, u, proj_tol),
        )
    u = 2.0 * t - 1.0
    return (
        flatten(desingularize(P.start, 1.0, proj_tol), u, proj_tol),
        flatten(desingularize(P.goal, 1.0, proj_tol), u, proj_tol),
    )
