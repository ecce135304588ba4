"""Local planners, region classification, and the assembled query planner.

The planner returns an exactly evaluable path: every motion it produces is
piecewise-affine in the time parameter, with breakpoints fixed a priori, so a
path is represented by its node configurations at those breakpoints and
evaluated by interpolation. That makes evaluation O(n*d), endpoint values
bit-exact, and the values at interior breakpoints identical from both sides
by construction.

Assembly, outer thirds first:

* first third  -- deform the start configuration onto the obstacle line
  (desingularize on the first half, flatten on the second);
* middle third -- travel between the two colinear configurations with robot i
  lifted to height i along the quarter-turn field of the line direction
  (:func:`colinear_section`), so lifted robots stay pairwise >= 1 apart and
  >= 1 above the line the obstacles occupy;
* last third   -- the goal-side deformation, reversed.

Queries are classified by the pair (i, j) of projection counts of start and
goal; the planner map is continuous in the query on each region with fixed
i + j, and the label ell = i + j ranges over the 2n+1 values 4..2n+4.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .configspace import (
    Configuration,
    QueryPair,
    cp_count,
    is_colinear,
    validate_query_pair,
)
from .deformations import desingularize, flatten
from .errors import NotColinear, OutOfRangeTime
from .geometry import DEFAULT_TOL, nu

GLUE_BREAKPOINTS = (0.0, 1 / 6, 1 / 3, 4 / 9, 5 / 9, 2 / 3, 5 / 6, 1.0)


@dataclass(frozen=True)
class RegionIndex:
    """Continuity-region label of a query: projection counts of start and
    goal, repacked by their sum ell = i + j."""

    i: int
    j: int
    ell: int = field(init=False)

    def __post_init__(self):
        if self.i < 2 or self.j < 2:
            raise ValueError(f"projection counts must be >= 2, got ({self.i}, {self.j})")
        object.__setattr__(self, "ell", self.i + self.j)


class PlannedPath:
    """A piecewise-affine map [0, 1] -> configurations with fixed obstacles.

    ``nodes[k]`` holds the full (n+2, d) point array at ``breakpoints[k]``;
    between breakpoints every entity moves affinely. The obstacle rows of
    every evaluation are written from the query's obstacle block, so they are
    bit-identical at all times.
    """

    def __init__(self, query: QueryPair, region: RegionIndex | None, breakpoints, nodes):
        breaks = np.array(breakpoints, dtype=float)
        nodes = np.array(nodes, dtype=float)
        if breaks.ndim != 1 or len(breaks) < 2:
            raise ValueError("need at least two breakpoints")
        if breaks[0] != 0.0 or breaks[-1] != 1.0 or np.any(np.diff(breaks) <= 0):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        if nodes.shape != (len(breaks), query.start.n + 2, query.start.d):
            raise ValueError(
                f"nodes shape {nodes.shape} does not match breakpoints/query"
            )
        breaks.setflags(write=False)
        nodes.setflags(write=False)
        self.query = query
        self.region = region
        self._breaks = breaks
        self._break_list = breaks.tolist()  # scalar lookup via bisect is cheaper
        self._nodes = nodes
        self._obstacles = query.start.obstacles

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self._breaks)

    @property
    def n(self) -> int:
        return self._nodes.shape[1] - 2

    @property
    def d(self) -> int:
        return self._nodes.shape[2]

    def positions(self, t: float) -> np.ndarray:
        """Point array (n+2, d) at time t, obstacles in the first two rows."""
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise OutOfRangeTime(f"path parameter must lie in [0, 1], got {t!r}")
        k = min(bisect_right(self._break_list, t) - 1, len(self._break_list) - 2)
        t0 = self._break_list[k]
        t1 = self._break_list[k + 1]
        if t == t0:
            out = self._nodes[k].copy()
        elif t == t1:
            out = self._nodes[k + 1].copy()
        else:
            a = self._nodes[k]
            out = a + ((t - t0) / (t1 - t0)) * (self._nodes[k + 1] - a)
        out[:2] = self._obstacles
        return out

    def positions_many(self, ts) -> np.ndarray:
        """Vectorized evaluation: (T,) times -> (T, n+2, d) point arrays."""
        ts = np.asarray(ts, dtype=float)
        if ts.ndim != 1:
            raise ValueError(f"expected a 1-D array of times, got shape {ts.shape}")
        if ts.size and not (0.0 <= ts.min() and ts.max() <= 1.0):
            raise OutOfRangeTime("all path parameters must lie in [0, 1]")
        last = len(self._breaks) - 2
        k = np.clip(np.searchsorted(self._breaks, ts, side="right") - 1, 0, last)
        t0 = self._breaks[k]
        t1 = self._breaks[k + 1]
        a = self._nodes[k]
        w = ((ts - t0) / (t1 - t0))[:, None, None]
        out = a + w * (self._nodes[k + 1] - a)
        hit = ts == t0
        if hit.any():
            out[hit] = self._nodes[k[hit]]
        hit = ts == t1
        if hit.any():
            out[hit] = self._nodes[k[hit] + 1]
        out[:, :2, :] = self._obstacles
        return out

    def evaluate(self, t: float) -> Configuration:
        """Configuration at time t."""
        return Configuration(self._obstacles, self.positions(t)[2:])

    __call__ = evaluate


def _lift_rows(n: int, direction: np.ndarray) -> np.ndarray:
    """Row j (0-based) is the lift of robot j+1: (j+1) * quarter-turn(direction)."""
    return np.multiply.outer(np.arange(1, n + 1, dtype=float), nu(direction))


def _assemble(query, region, breaks, robot_stages) -> PlannedPath:
    k = query.start.n + 2
    nodes = np.empty((len(robot_stages), k, query.start.d))
    nodes[:, :2, :] = query.start.obstacles
    for idx, robots in enumerate(robot_stages):
        nodes[idx, 2:, :] = robots
    return PlannedPath(query, region, breaks, nodes)


def classify(P: QueryPair, proj_tol: float = DEFAULT_TOL) -> RegionIndex:
    """Region label of a valid query pair: (cp_count(start), cp_count(goal))."""
    validate_query_pair(P)
    return RegionIndex(cp_count(P.start, proj_tol), cp_count(P.goal, proj_tol))


def colinear_section(P: QueryPair, tol: float = DEFAULT_TOL) -> PlannedPath:
    """Planner for query pairs that already lie on the obstacle line.

    Robot i rises to height i along the quarter-turn of the line direction
    during [0, 1/3], translates to its goal slot during [1/3, 2/3], and
    descends during [2/3, 1]. Heights are the robot indices themselves (not
    rescaled), so lifted entities are separated by >= 1 in the lift
    coordinate regardless of the workspace scale.
    """
    validate_query_pair(P, tol)
    if not is_colinear(P.start, tol):
        raise NotColinear("start configuration does not lie on the obstacle line")
    if not is_colinear(P.goal, tol):
        raise NotColinear("goal configuration does not lie on the obstacle line")
    n = P.start.n
    lift = _lift_rows(n, P.start.line(tol).direction)
    stages = (
        P.start.robots,
        P.start.robots + lift,
        P.goal.robots + lift,
        P.goal.robots,
    )
    region = RegionIndex(n + 2, n + 2)
    return _assemble(P, region, (0.0, 1 / 3, 2 / 3, 1.0), stages)


def _glue_path(P: QueryPair, proj_tol: float, region: RegionIndex | None) -> PlannedPath:
    start, goal = P.start, P.goal
    d_start = desingularize(start, 1.0, proj_tol)
    d_goal = desingularize(goal, 1.0, proj_tol)
    f_start = flatten(d_start, 1.0, proj_tol)
    f_goal = flatten(d_goal, 1.0, proj_tol)
    lift = _lift_rows(start.n, start.line(proj_tol).direction)
    stages = (
        start.robots,
        d_start.robots,
        f_start.robots,
        f_start.robots + lift,
        f_goal.robots + lift,
        f_goal.robots,
        d_goal.robots,
        goal.robots,
    )
    return _assemble(P, region, GLUE_BREAKPOINTS, stages)


def glue(P: QueryPair, proj_tol: float = DEFAULT_TOL) -> PlannedPath:
    """Full local planner on any valid query pair: deform both endpoints onto
    the obstacle line (outer thirds) and run the colinear planner between the
    deformed endpoints (middle third).

    The returned path starts at P.start, ends at P.goal, keeps the obstacles
    bit-constant, and is collision-free at every t.
    """
    validate_query_pair(P)
    return _glue_path(P, proj_tol, None)


def plan(P: QueryPair, proj_tol: float = DEFAULT_TOL) -> PlannedPath:
    """Plan a collision-free path for a valid query pair, tagged with its
    continuity-region label."""
    validate_query_pair(P)
    region = RegionIndex(cp_count(P.start, proj_tol), cp_count(P.goal, proj_tol))
    return _glue_path(P, proj_tol, region)


def straight_line_plan(P: QueryPair) -> PlannedPath:
    """Naive baseline: linear interpolation of every entity.

    Obstacles stay fixed (they are shared), but nothing prevents robots from
    colliding along the way; this exists as a negative control for the
    verifier and offers no validity guarantee.
    """
    validate_query_pair(P)
    return PlannedPath(
        P, None, (0.0, 1.0), np.stack([P.start.points(), P.goal.points()])
    )


def sample(path: PlannedPath, N: int) -> list[tuple[float, Configuration]]:
    """N evaluations at the uniform grid t = k/(N-1), endpoints included."""
    if N < 2:
        raise ValueError(f"need at least 2 samples, got {N}")
    ts = np.arange(N, dtype=float) / (N - 1)
    obstacles = path.query.start.obstacles
    positions = path.positions_many(ts)
    return [(float(t), Configuration(obstacles, p[2:])) for t, p in zip(ts, positions)]
