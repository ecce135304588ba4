"""Configurations, query pairs, and the projection-count stratification.

A configuration is an ordered tuple (o1, o2, x1..xn) of pairwise-distinct
points in R^d: two obstacles followed by n robots. A query pair is two
configurations that share the exact same ordered obstacle pair; paths planned
for it must keep the obstacles fixed.

The planner's case analysis is driven by a single integer invariant per
configuration: the number of distinct values among the scalar projections of
all n+2 points onto the obstacle line (:func:`cp_count`, between 2 and n+2).
The companion quantity :func:`epsilon_bar` is the safety margin by which
coincident projections can be separated without ever crossing a distinct one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CollidingPoints,
    DimensionMismatch,
    NonFinitePoint,
    ObstacleMismatch,
    OddDimension,
)
from .geometry import DEFAULT_TOL, OrientedLine, line_of, project_point, project_scalar


def _frozen_array(value) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim != 2:
        arr = np.atleast_2d(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Configuration:
    """Ordered tuple of two obstacles and n robots in R^d.

    ``obstacles`` has shape (2, d) and ``robots`` shape (n, d). Construction
    only normalizes shapes; distinctness and parity are checked explicitly by
    :func:`validate_configuration` so that cheap intermediate values (e.g.
    points along a homotopy) can be built without quadratic validation cost.
    """

    obstacles: np.ndarray
    robots: np.ndarray

    def __post_init__(self):
        obstacles = _frozen_array(self.obstacles)
        robots = _frozen_array(self.robots)
        if obstacles.ndim != 2 or obstacles.shape[0] != 2:
            raise DimensionMismatch(
                f"obstacles must have shape (2, d), got {obstacles.shape}"
            )
        if robots.ndim != 2 or robots.shape[1] != obstacles.shape[1]:
            raise DimensionMismatch(
                f"robots shape {robots.shape} incompatible with obstacle dimension "
                f"{obstacles.shape[1]}"
            )
        object.__setattr__(self, "obstacles", obstacles)
        object.__setattr__(self, "robots", robots)

    @property
    def d(self) -> int:
        return self.obstacles.shape[1]

    @property
    def n(self) -> int:
        return self.robots.shape[0]

    def points(self) -> np.ndarray:
        """All n+2 points as a fresh (n+2, d) array, obstacles first."""
        return np.concatenate((self.obstacles, self.robots))

    def line(self, tol: float = DEFAULT_TOL) -> OrientedLine:
        """The oriented line through the obstacle pair."""
        return line_of(self.obstacles[0], self.obstacles[1], tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return np.array_equal(self.obstacles, other.obstacles) and np.array_equal(
            self.robots, other.robots
        )


@dataclass(frozen=True, eq=False)
class QueryPair:
    """A start and goal configuration sharing one ordered obstacle pair."""

    start: Configuration
    goal: Configuration

    def __eq__(self, other) -> bool:
        if not isinstance(other, QueryPair):
            return NotImplemented
        return self.start == other.start and self.goal == other.goal


def entity_labels(n: int) -> list[str]:
    """Human-readable labels o1, o2, x1..xn in point order."""
    return ["o1", "o2"] + [f"x{i}" for i in range(1, n + 1)]


def validate_configuration(C: Configuration, tol: float = DEFAULT_TOL) -> None:
    """Check membership in the configuration space.

    Requires even dimension d >= 2, at least one robot, finite coordinates,
    and all n+2 points pairwise farther apart than ``tol``. Raises
    OddDimension, DimensionMismatch, NonFinitePoint or CollidingPoints.
    """
    if C.d < 2 or C.d % 2 != 0:
        raise OddDimension(f"planner requires even dimension >= 2, got d={C.d}")
    if C.n < 1:
        raise DimensionMismatch("configuration needs at least one robot")
    pts = C.points()
    if not np.isfinite(pts).all():
        raise NonFinitePoint("configuration contains NaN or infinite coordinates")
    labels = entity_labels(C.n)
    diffs = pts[:, None, :] - pts[None, :, :]
    dist = np.linalg.norm(diffs, axis=-1)
    iu = np.triu_indices(len(pts), k=1)
    gaps = dist[iu]
    bad = np.argmin(gaps)
    if gaps[bad] <= tol:
        a, b = iu[0][bad], iu[1][bad]
        raise CollidingPoints(labels[a], labels[b], float(gaps[bad]))


def validate_query_pair(P: QueryPair, tol: float = DEFAULT_TOL) -> None:
    """Check that both configurations are valid and share the obstacle block.

    Obstacle equality is exact (no tolerance): the fibered constraint is that
    both configurations cite one and the same obstacle pair, in order.
    """
    validate_configuration(P.start, tol)
    validate_configuration(P.goal, tol)
    if P.start.d != P.goal.d or P.start.n != P.goal.n:
        raise DimensionMismatch(
            f"start is (d={P.start.d}, n={P.start.n}), "
            f"goal is (d={P.goal.d}, n={P.goal.n})"
        )
    if not np.array_equal(P.start.obstacles, P.goal.obstacles):
        raise ObstacleMismatch(
            "start and goal must share the exact same ordered obstacle pair"
        )


def projections(C: Configuration, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Scalar line coordinates of all n+2 points, obstacles first.

    The first entry is exactly 0.0 (the line is anchored at o1).
    """
    return np.asarray(project_scalar(C.line(tol), C.points()))


def _cluster_means(lams: np.ndarray, threshold: float) -> np.ndarray:
    """Single-linkage clustering of scalar values: sort, then merge adjacent
    values whose gap is <= threshold. Returns the sorted cluster means."""
    lams = np.sort(lams)
    boundary = np.diff(lams) > threshold
    cluster_id = np.concatenate(([0], np.cumsum(boundary)))
    counts = np.bincount(cluster_id)
    return np.bincount(cluster_id, weights=lams) / counts


def _projection_threshold(C: Configuration, proj_tol: float) -> float:
    gap = float(np.linalg.norm(C.obstacles[1] - C.obstacles[0]))
    return proj_tol * max(1.0, gap)


def cp_count(C: Configuration, proj_tol: float = DEFAULT_TOL) -> int:
    """Number of distinct scalar projections among the n+2 points.

    Two projections count as equal when they fall in the same single-linkage
    cluster at threshold ``proj_tol * max(1, |o2-o1|)``. The result lies in
    {2, ..., n+2}: the obstacle projections are always distinct.
    """
    lams = projections(C)
    return int(len(_cluster_means(lams, _projection_threshold(C, proj_tol))))


def epsilon_bar(C: Configuration, proj_tol: float = DEFAULT_TOL) -> float:
    """Safe separation step: 1/(n+2) of the smallest gap between distinct
    projection values (obstacles included).

    Cluster means stand in for exactly-equal projections, which keeps the
    value stable under sub-tolerance jitter. Always strictly positive, since
    the two obstacle projections differ.
    """
    lams = projections(C)
    means = _cluster_means(lams, _projection_threshold(C, proj_tol))
    min_gap = float(np.min(np.diff(means)))
    return min_gap / (C.n + 2)


def is_colinear(C: Configuration, tol: float = DEFAULT_TOL) -> bool:
    """True when every robot lies on the obstacle line (residual <= tol)."""
    line = C.line(tol)
    residuals = C.robots - project_point(line, C.robots)
    return bool(np.all(np.linalg.norm(residuals, axis=1) <= tol))
