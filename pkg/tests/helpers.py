"""Shared test utilities: independent instance sampling and collision scans.

These deliberately do not reuse the library's generators or separation
analysis, so tests that compare against them have an independent oracle.
"""

import numpy as np

from paraplan.configspace import Configuration, QueryPair


def random_configuration(rng, n, d, scale=1.0, min_sep=0.05):
    """Rejection-sample a valid configuration."""
    while True:
        pts = rng.uniform(-scale, scale, size=(n + 2, d))
        if min_pairwise_distance(pts) > min_sep:
            return Configuration(pts[:2], pts[2:])


def random_query(rng, n, d, scale=1.0, min_sep=0.05):
    """A valid query pair with shared obstacles."""
    start = random_configuration(rng, n, d, scale, min_sep)
    while True:
        goal_robots = rng.uniform(-scale, scale, size=(n, d))
        pts = np.concatenate([start.obstacles, goal_robots])
        if min_pairwise_distance(pts) > min_sep:
            return QueryPair(start, Configuration(start.obstacles, goal_robots))


def min_pairwise_distance(points):
    """Smallest pairwise distance; points may be (k, d) or stacked (..., k, d)."""
    points = np.asarray(points, dtype=float)
    iu, iv = np.triu_indices(points.shape[-2], k=1)
    return float(
        np.linalg.norm(points[..., iu, :] - points[..., iv, :], axis=-1).min()
    )


def sweep_min_distance(points0, delta, ts):
    """Exhaustive collision scan of the affine sweep points0 + t*delta."""
    ts = np.asarray(ts, dtype=float)
    positions = points0[None] + ts[:, None, None] * delta[None]
    return min_pairwise_distance(positions)
