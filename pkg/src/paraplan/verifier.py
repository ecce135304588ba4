"""Batch property verification: collision scans, stratum semicontinuity,
region census, continuity probing, and baseline comparison.

Verification never raises on a property violation; it records a
:class:`Failure` with a replayable witness instead. Per-instance checks are
independent and reports merge associatively, so a caller may fan instances
out across workers and combine the fragments.

Collision checking exploits that every planned path is piecewise-affine
between its breakpoints: besides a dense time grid, the minimum pairwise
separation is computed exactly by minimizing the per-segment quadratic
|r0 + s*(r1-r0)|^2 for each entity pair, making the check certificate-grade.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .configspace import (
    Configuration,
    QueryPair,
    cp_count,
    entity_labels,
    validate_query_pair,
)
from .errors import InfeasibleInstanceSpec, OddDimension
from .geometry import DEFAULT_TOL, line_of
from .planner import PlannedPath, classify, plan

# Endpoint reproduction tolerance (relative, per coordinate).
ENDPOINT_RTOL = 1e-9

# Rejection-sampling attempts per point before generation gives up.
_PLACEMENT_BUDGET = 2000

_FAMILIES = ("generic", "colinear", "swap", "clustered")


@dataclass(frozen=True)
class InstanceSpec:
    """Deterministic recipe for a batch of random query pairs."""

    d: int
    n: int
    seed: int
    count: int
    scale: float = 1.0
    min_sep: float = 0.05

    def __post_init__(self):
        if self.d < 2 or self.d % 2 != 0:
            raise OddDimension(f"instance dimension must be even >= 2, got {self.d}")
        if self.n < 1:
            raise ValueError(f"need at least one robot, got n={self.n}")
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")
        if self.scale <= 0 or self.min_sep <= 0:
            raise ValueError("scale and min_sep must be positive")


@dataclass
class Failure:
    """One violated property, with enough data to replay it."""

    instance: int | str
    prop: str
    witness: dict

    def to_dict(self) -> dict:
        return {"instance": self.instance, "property": self.prop, "witness": self.witness}


@dataclass
class VerificationReport:
    """Associatively mergeable outcome of a batch of checks."""

    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    min_separation: float | None = None
    continuity_constant: float | None = None
    region_histogram: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        hist = dict(self.region_histogram)
        for ell, c in other.region_histogram.items():
            hist[ell] = hist.get(ell, 0) + c
        seps = [s for s in (self.min_separation, other.min_separation) if s is not None]
        ks = [k for k in (self.continuity_constant, other.continuity_constant) if k is not None]
        return VerificationReport(
            instances=self.instances + other.instances,
            failures=self.failures + other.failures,
            min_separation=min(seps) if seps else None,
            continuity_constant=max(ks) if ks else None,
            region_histogram=hist,
        )

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            "min_separation": self.min_separation,
            "continuity_constant": self.continuity_constant,
            "region_histogram": {str(k): v for k, v in sorted(self.region_histogram.items())},
        }


# ---------------------------------------------------------------------------
# instance generation


def _place_point(rng, existing, d, scale, min_sep):
    for _ in range(_PLACEMENT_BUDGET):
        cand = rng.uniform(-scale, scale, size=d)
        if all(np.linalg.norm(cand - p) > min_sep for p in existing):
            return cand
    raise InfeasibleInstanceSpec(
        f"could not place a point with min_sep={min_sep} inside scale={scale} "
        f"after {_PLACEMENT_BUDGET} attempts"
    )


def _random_obstacles(rng, spec: InstanceSpec) -> np.ndarray:
    floor = max(spec.min_sep, 0.2 * spec.scale)
    for _ in range(_PLACEMENT_BUDGET):
        obs = rng.uniform(-spec.scale, spec.scale, size=(2, spec.d))
        if np.linalg.norm(obs[1] - obs[0]) > floor:
            return obs
    raise InfeasibleInstanceSpec("could not place a non-degenerate obstacle pair")


def _generic_robots(rng, spec, obstacles) -> np.ndarray:
    pts = [obstacles[0], obstacles[1]]
    for _ in range(spec.n):
        pts.append(_place_point(rng, pts, spec.d, spec.scale, spec.min_sep))
    return np.array(pts[2:])


def _colinear_robots(rng, spec, obstacles) -> np.ndarray:
    line = line_of(obstacles[0], obstacles[1])
    gap = float(np.linalg.norm(obstacles[1] - obstacles[0]))
    taken = [0.0, gap]
    for _ in range(spec.n):
        for _ in range(_PLACEMENT_BUDGET):
            lam = rng.uniform(-2.0 * spec.scale, 2.0 * spec.scale)
            if all(abs(lam - other) > spec.min_sep for other in taken):
                taken.append(lam)
                break
        else:
            raise InfeasibleInstanceSpec(
                f"could not place {spec.n} colinear robots with min_sep={spec.min_sep}"
            )
    lams = np.array(taken[2:])
    return obstacles[0] + np.multiply.outer(lams, line.direction)


def _unit_orthogonal(rng, direction: np.ndarray) -> np.ndarray:
    while True:
        v = rng.normal(size=direction.shape[0])
        v = v - (v @ direction) * direction
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm


def _clustered_robots(rng, spec, obstacles) -> np.ndarray:
    """Robots stacked on orthogonal fibers over a small pool of projection
    values, producing configurations in low-projection-count strata."""
    line = line_of(obstacles[0], obstacles[1])
    gap = float(np.linalg.norm(obstacles[1] - obstacles[0]))
    pool = [0.0, gap]
    pts = [obstacles[0], obstacles[1]]
    robots = []
    for _ in range(spec.n):
        for _ in range(_PLACEMENT_BUDGET):
            lam = pool[rng.integers(len(pool))]
            offset = _unit_orthogonal(rng, line.direction)
            height = rng.uniform(spec.min_sep, spec.scale)
            cand = obstacles[0] + lam * line.direction + height * offset
            if all(np.linalg.norm(cand - p) > spec.min_sep for p in pts):
                pts.append(cand)
                robots.append(cand)
                break
        else:
            raise InfeasibleInstanceSpec("could not place clustered robots")
        if rng.random() < 0.25:
            pool.append(rng.uniform(0.1 * gap, 0.9 * gap))
    return np.array(robots)


def _nonidentity_permutation(rng, n: int) -> np.ndarray:
    if n < 2:
        return np.arange(n)
    while True:
        perm = rng.permutation(n)
        if not np.array_equal(perm, np.arange(n)):
            return perm


def generate_queries(
    spec: InstanceSpec, families: tuple[str, ...] = _FAMILIES
) -> list[QueryPair]:
    """Deterministic batch of valid query pairs, cycling through the given
    families: generic, colinear, swap (goal robots a permutation of start
    robots), and clustered-projection (low stratum)."""
    unknown = set(families) - set(_FAMILIES)
    if not families or unknown:
        raise ValueError(f"unknown families: {sorted(unknown)}")
    rng = np.random.default_rng(spec.seed)
    queries = []
    for idx in range(spec.count):
        family = families[idx % len(families)]
        obstacles = _random_obstacles(rng, spec)
        if family == "generic":
            start = _generic_robots(rng, spec, obstacles)
            goal = _generic_robots(rng, spec, obstacles)
        elif family == "colinear":
            start = _colinear_robots(rng, spec, obstacles)
            goal = _colinear_robots(rng, spec, obstacles)
        elif family == "swap":
            start = _generic_robots(rng, spec, obstacles)
            goal = start[_nonidentity_permutation(rng, spec.n)]
        else:
            start = _clustered_robots(rng, spec, obstacles)
            goal = _clustered_robots(rng, spec, obstacles)
        pair = QueryPair(
            Configuration(obstacles, start), Configuration(obstacles, goal)
        )
        validate_query_pair(pair)
        queries.append(pair)
    return queries


def swap_colinear_queries(
    n: int, d: int, count: int, seed: int, scale: float = 1.0, min_sep: float = 0.05
) -> list[QueryPair]:
    """Colinear query pairs whose goal permutes the start robots nontrivially.

    Straight-line interpolation provably collides on every such query (two
    robots must exchange order along the line), so these are the negative
    control for the baseline planner. Requires n >= 2.
    """
    if n < 2:
        raise ValueError("a nontrivial swap needs at least two robots")
    spec = InstanceSpec(d=d, n=n, seed=seed, count=count, scale=scale, min_sep=min_sep)
    rng = np.random.default_rng(spec.seed)
    queries = []
    for _ in range(count):
        obstacles = _random_obstacles(rng, spec)
        start = _colinear_robots(rng, spec, obstacles)
        goal = start[_nonidentity_permutation(rng, n)]
        pair = QueryPair(Configuration(obstacles, start), Configuration(obstacles, goal))
        validate_query_pair(pair)
        queries.append(pair)
    return queries


# ---------------------------------------------------------------------------
# constructed stratum witnesses


def stratum_witness(n: int, d: int, i: int) -> Configuration:
    """Deterministic configuration with exactly ``i`` distinct projections.

    Obstacles sit at the origin and the first axis unit; i-2 robots occupy
    distinct interior line positions, and the rest stack above the first
    obstacle at integer heights along the second axis.
    """
    if not 2 <= i <= n + 2:
        raise ValueError(f"stratum must lie in [2, {n + 2}], got {i}")
    if d < 2 or d % 2 != 0:
        raise OddDimension(f"witness dimension must be even >= 2, got {d}")
    obstacles = np.zeros((2, d))
    obstacles[1, 0] = 1.0
    robots = np.zeros((n, d))
    extra = i - 2
    for k in range(extra):
        robots[k, 0] = (k + 1) / (extra + 1)
    for m in range(n - extra):
        robots[extra + m, 1] = float(m + 1)
    return Configuration(obstacles, robots)


def witness_query(n: int, d: int, i: int, j: int) -> QueryPair:
    """Query pair landing exactly in region (i, j)."""
    return QueryPair(stratum_witness(n, d, i), stratum_witness(n, d, j))


# ---------------------------------------------------------------------------
# separation analysis


def pairwise_separations(points: np.ndarray) -> np.ndarray:
    """Distances for all unordered entity pairs; points (..., k, d) ->
    separations (..., k*(k-1)/2)."""
    iu, iv = np.triu_indices(points.shape[-2], k=1)
    return np.linalg.norm(points[..., iu, :] - points[..., iv, :], axis=-1)


def min_separation_sampled(path: PlannedPath, samples: int = 1000):
    """Min pairwise separation over a uniform time grid.

    Returns (distance, t, (label_a, label_b)).
    """
    ts = np.arange(samples, dtype=float) / (samples - 1)
    seps = pairwise_separations(path.positions_many(ts))
    flat = int(np.argmin(seps))
    row, col = divmod(flat, seps.shape[1])
    iu, iv = np.triu_indices(path.n + 2, k=1)
    labels = entity_labels(path.n)
    return float(seps[row, col]), float(ts[row]), (labels[iu[col]], labels[iv[col]])


def min_separation_exact(path: PlannedPath):
    """Exact minimum pairwise separation over all t in [0, 1].

    Relies on the path being affine between consecutive breakpoints, in which
    case each pair's squared distance is a quadratic per segment whose
    minimum has a closed form. Returns (distance, t, (label_a, label_b)).
    """
    breaks = np.asarray(path.breakpoints)
    nodes = path.positions_many(breaks)
    iu, iv = np.triu_indices(path.n + 2, k=1)
    labels = entity_labels(path.n)
    best = (np.inf, 0.0, (labels[0], labels[1]))
    for s in range(len(breaks) - 1):
        r0 = nodes[s, iu, :] - nodes[s, iv, :]
        r1 = nodes[s + 1, iu, :] - nodes[s + 1, iv, :]
        v = r1 - r0
        vv = np.einsum("ij,ij->i", v, v)
        rv = np.einsum("ij,ij->i", r0, v)
        w = np.clip(np.divide(-rv, vv, out=np.zeros_like(vv), where=vv > 0), 0.0, 1.0)
        closest = r0 + w[:, None] * v
        dist = np.linalg.norm(closest, axis=1)
        k = int(np.argmin(dist))
        if dist[k] < best[0]:
            t = float(breaks[s] + w[k] * (breaks[s + 1] - breaks[s]))
            best = (float(dist[k]), t, (labels[iu[k]], labels[iv[k]]))
    return best


# ---------------------------------------------------------------------------
# per-instance checks


def verify_path(
    P: QueryPair,
    path: PlannedPath,
    samples: int = 1000,
    instance: int | str = 0,
    separation_floor: float = 0.0,
) -> VerificationReport:
    """Check one already-planned path: endpoint reproduction, bit-constant
    obstacles, and strictly positive separation (sampled and exact)."""
    failures = []
    ts = np.arange(samples, dtype=float) / (samples - 1)
    trace = path.positions_many(ts)

    for label, got, want in (("start", trace[0], P.start.points()),
                             ("goal", trace[-1], P.goal.points())):
        err = np.abs(got - want) / np.maximum(1.0, np.abs(want))
        worst = float(err.max())
        if worst > ENDPOINT_RTOL:
            failures.append(Failure(instance, f"endpoint-{label}",
                                    {"relative_error": worst}))

    constant = (trace[:, :2, :] == P.start.obstacles).all(axis=(1, 2))
    if not constant.all():
        t_bad = float(ts[int(np.argmin(constant))])
        failures.append(Failure(instance, "obstacle-constancy", {"t": t_bad}))

    sampled = min_separation_sampled(path, samples)
    exact = min_separation_exact(path)
    worst = min(sampled, exact)
    if worst[0] <= separation_floor:
        failures.append(Failure(instance, "collision",
                                {"t": worst[1], "pair": list(worst[2]),
                                 "distance": worst[0]}))

    return VerificationReport(
        instances=1, failures=failures, min_separation=worst[0]
    )


def verify_plan(
    P: QueryPair,
    samples: int = 1000,
    proj_tol: float = DEFAULT_TOL,
    instance: int | str = 0,
    separation_floor: float = 0.0,
) -> VerificationReport:
    """Plan a query and verify the resulting path."""
    path = plan(P, proj_tol)
    report = verify_path(P, path, samples, instance, separation_floor)
    ell = path.region.ell
    report.region_histogram[ell] = report.region_histogram.get(ell, 0) + 1
    return report


# ---------------------------------------------------------------------------
# census, semicontinuity, continuity probe


def verify_region_census(
    n: int,
    d: int,
    spec: InstanceSpec | None = None,
    proj_tol: float = DEFAULT_TOL,
    include_witnesses: bool = True,
) -> dict[int, int]:
    """Histogram of region labels over constructed witnesses (one per (i, j)
    pair) plus, optionally, a generated batch.

    With witnesses enabled, every label in {4, ..., 2n+4} is attained by
    construction; random batches alone concentrate on 2n+4 because lower
    strata have measure zero.
    """
    hist: dict[int, int] = {}
    if include_witnesses:
        attained = set()
        for i, j in itertools.product(range(2, n + 3), repeat=2):
            ell = classify(witness_query(n, d, i, j), proj_tol).ell
            hist[ell] = hist.get(ell, 0) + 1
            attained.add(ell)
        expected = set(range(4, 2 * n + 5))
        if attained != expected:
            raise RuntimeError(
                f"constructed witnesses attained {sorted(attained)}, "
                f"expected {sorted(expected)}"
            )
    if spec is not None:
        for P in generate_queries(spec):
            ell = classify(P, proj_tol).ell
            hist[ell] = hist.get(ell, 0) + 1
    return hist


def verify_semicontinuity(
    spec: InstanceSpec,
    delta: float,
    proj_tol: float = DEFAULT_TOL,
    trials: int = 50,
) -> VerificationReport:
    """Perturb constructed coincident-projection configurations by ``delta``
    and check the projection count never drops."""
    if delta >= proj_tol / 10:
        raise ValueError(
            f"perturbation {delta} must stay below proj_tol/10 = {proj_tol / 10}"
        )
    rng = np.random.default_rng([spec.seed, 0x5EED])
    failures = []
    checked = 0
    for i in range(2, spec.n + 3):
        base_config = stratum_witness(spec.n, spec.d, i)
        base = cp_count(base_config, proj_tol)
        for trial in range(trials):
            noise = rng.normal(size=base_config.robots.shape)
            noise *= delta / np.linalg.norm(noise)
            perturbed = Configuration(
                base_config.obstacles, base_config.robots + noise
            )
            after = cp_count(perturbed, proj_tol)
            checked += 1
            if after < base:
                failures.append(
                    Failure(
                        f"stratum-{i}/trial-{trial}",
                        "semicontinuity",
                        {"before": base, "after": after,
                         "robots": perturbed.robots.tolist()},
                    )
                )
    return VerificationReport(instances=checked, failures=failures)


def path_deviation(path_a: PlannedPath, path_b: PlannedPath, samples: int = 256) -> float:
    """Sup over a time grid of the max per-coordinate difference."""
    ts = np.arange(samples, dtype=float) / (samples - 1)
    return float(np.abs(path_a.positions_many(ts) - path_b.positions_many(ts)).max())


def perturbed_query(
    P: QueryPair, u_start: np.ndarray, u_goal: np.ndarray, delta: float
) -> QueryPair:
    """Shift start/goal robots by delta along fixed unit direction arrays,
    keeping the shared obstacle block untouched."""
    return QueryPair(
        Configuration(P.start.obstacles, P.start.robots + delta * u_start),
        Configuration(P.goal.obstacles, P.goal.robots + delta * u_goal),
    )


def robot_perturbation_directions(P: QueryPair, rng) -> tuple[np.ndarray, np.ndarray]:
    """Fixed random unit directions (Frobenius norm 1) for start and goal robots."""
    u_start = rng.normal(size=P.start.robots.shape)
    u_goal = rng.normal(size=P.goal.robots.shape)
    return u_start / np.linalg.norm(u_start), u_goal / np.linalg.norm(u_goal)


def estimate_continuity_constant(
    P: QueryPair,
    delta: float = 1e-7,
    samples: int = 256,
    proj_tol: float = DEFAULT_TOL,
    rng=None,
) -> float | None:
    """Empirical Lipschitz ratio sup-deviation / delta for one query, or None
    if the perturbation leaves the query's region."""
    rng = np.random.default_rng(0) if rng is None else rng
    u_start, u_goal = robot_perturbation_directions(P, rng)
    moved = perturbed_query(P, u_start, u_goal, delta)
    base_region = classify(P, proj_tol)
    if classify(moved, proj_tol) != base_region:
        return None
    dev = path_deviation(plan(P, proj_tol), plan(moved, proj_tol), samples)
    return dev / delta


# ---------------------------------------------------------------------------
# the full suite


def run_suite(
    spec: InstanceSpec,
    samples: int = 1000,
    proj_tol: float = DEFAULT_TOL,
    separation_floor: float = 0.0,
) -> VerificationReport:
    """Generate a batch, verify every planned path, census the regions with
    constructed witnesses, probe semicontinuity, and estimate the continuity
    constant. Deterministic in (spec, samples, proj_tol)."""
    report = VerificationReport()
    for idx, P in enumerate(generate_queries(spec)):
        report = report.merge(
            verify_plan(P, samples, proj_tol, instance=idx,
                        separation_floor=separation_floor)
        )

    census = verify_region_census(spec.n, spec.d, spec=None, proj_tol=proj_tol)
    report = report.merge(VerificationReport(region_histogram=census))
    expected = set(range(4, 2 * spec.n + 5))
    if set(census) != expected:
        report.failures.append(
            Failure("census", "region-census",
                    {"attained": sorted(census), "expected": sorted(expected)})
        )

    semi = verify_semicontinuity(spec, delta=proj_tol / 100, proj_tol=proj_tol,
                                 trials=20)
    report = report.merge(semi)

    rng = np.random.default_rng([spec.seed, 0xC0])
    ks = []
    for P in generate_queries(InstanceSpec(spec.d, spec.n, spec.seed + 1, 4,
                                           spec.scale, spec.min_sep))[:4]:
        k = estimate_continuity_constant(P, proj_tol=proj_tol, rng=rng)
        if k is not None:
            ks.append(k)
    if ks:
        report.continuity_constant = max(ks)
    return report
