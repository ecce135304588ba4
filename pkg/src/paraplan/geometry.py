"""Dimension-generic vector primitives.

The whole planner reduces to a handful of geometric operations around the
oriented line through the two obstacles: signed scalar projection onto that
line, the projected point itself, and a unit vector field orthogonal to any
direction vector (which exists only in even dimension, as a coordinate-pair
quarter turn).

All functions are pure; arrays are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateObstacles, DimensionMismatch, OddDimension

# Inputs are assumed normalized to order-1 workspace scale, so absolute
# tolerances at 1e-9 separate "distinct" from "coincident" robustly.
DEFAULT_TOL = 1e-9

# Unit-vector defect allowed in an OrientedLine direction.
UNIT_NORM_TOL = 1e-12


def as_point(value) -> np.ndarray:
    """Coerce to a 1-D float64 coordinate vector (always a fresh array)."""
    arr = np.array(value, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D point, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class OrientedLine:
    """An affine line, anchored at ``base`` and oriented along unit ``direction``."""

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        base = as_point(self.base)
        direction = as_point(self.direction)
        if base.shape != direction.shape:
            raise DimensionMismatch(
                f"base has dimension {base.shape[0]}, direction {direction.shape[0]}"
            )
        norm = float(np.linalg.norm(direction))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValueError(f"direction must be a unit vector, |direction|={norm!r}")
        base.setflags(write=False)
        direction.setflags(write=False)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)

    @property
    def d(self) -> int:
        return self.base.shape[0]


def line_of(o1, o2, tol: float = DEFAULT_TOL) -> OrientedLine:
    """Oriented line through two points, anchored at the first.

    Raises DegenerateObstacles when the points are closer than ``tol``.
    """
    o1 = as_point(o1)
    o2 = as_point(o2)
    if o1.shape != o2.shape:
        raise DimensionMismatch(
            f"anchor points have dimensions {o1.shape[0]} and {o2.shape[0]}"
        )
    gap = o2 - o1
    norm = float(np.linalg.norm(gap))
    if norm <= tol:
        raise DegenerateObstacles(f"anchor points coincide (distance {norm:.3e})")
    return OrientedLine(o1, gap / norm)


def project_scalar(line: OrientedLine, x):
    """Signed coordinate of ``x`` along the line (0 at ``line.base``).

    ``x`` may be a single point of shape (d,) or a stack of shape (..., d);
    the result is a float or an array of shape (...,) respectively. The
    projected point closest to ``x`` is ``base + project_scalar(line, x) *
    direction``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != line.d:
        raise DimensionMismatch(
            f"point dimension {x.shape[-1]} != line dimension {line.d}"
        )
    lam = (x - line.base) @ line.direction
    if x.ndim == 1:
        return float(lam)
    return lam


def project_point(line: OrientedLine, x) -> np.ndarray:
    """Orthogonal projection of ``x`` onto the line; idempotent on line points."""
    lam = project_scalar(line, x)
    return line.base + np.multiply.outer(lam, line.direction)


def nu(v) -> np.ndarray:
    """Quarter-turn of each coordinate pair: (x1,y1,...) -> (-y1,x1,...).

    For any v this is orthogonal to v and has the same norm, which makes it a
    collision-free "lift" direction transverse to any line. Defined only in
    even dimension; raises OddDimension otherwise. Accepts stacked input of
    shape (..., d).
    """
    v = np.asarray(v, dtype=float)
    d = v.shape[-1]
    if d % 2 != 0:
        raise OddDimension(f"coordinate-pair rotation undefined in dimension {d}")
    out = np.empty_like(v)
    out[..., 0::2] = -v[..., 1::2]
    out[..., 1::2] = v[..., 0::2]
    return out
