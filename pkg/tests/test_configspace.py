import numpy as np
import pytest

from paraplan.configspace import (
    Configuration,
    QueryPair,
    cp_count,
    entity_labels,
    epsilon_bar,
    is_colinear,
    projections,
    validate_configuration,
    validate_query_pair,
)
from paraplan.deformations import desingularize, flatten
from paraplan.errors import (
    CollidingPoints,
    DimensionMismatch,
    NonFinitePoint,
    ObstacleMismatch,
    OddDimension,
)

from helpers import random_configuration

UNIT_OBSTACLES = [[0.0, 0.0], [1.0, 0.0]]


def test_validate_ok():
    C = Configuration(UNIT_OBSTACLES, [[2.0, 0.0]])
    validate_configuration(C, tol=1e-9)


def test_validate_reports_colliding_pair():
    C = Configuration(UNIT_OBSTACLES, [[0.0, 0.0]])
    with pytest.raises(CollidingPoints) as err:
        validate_configuration(C)
    assert err.value.pair == ("o1", "x1")


def test_validate_rejects_odd_dimension():
    C = Configuration([[0, 0, 0], [1, 0, 0]], [[2, 0, 0]])
    with pytest.raises(OddDimension):
        validate_configuration(C)


def test_validate_rejects_nan():
    C = Configuration(UNIT_OBSTACLES, [[np.nan, 0.0]])
    with pytest.raises(NonFinitePoint):
        validate_configuration(C)


def test_configuration_shape_checks():
    with pytest.raises(DimensionMismatch):
        Configuration([[0, 0], [1, 0], [2, 0]], [[3, 0]])
    with pytest.raises(DimensionMismatch):
        Configuration(UNIT_OBSTACLES, [[1, 2, 3]])


def test_configuration_immutable():
    C = Configuration(UNIT_OBSTACLES, [[2.0, 0.0]])
    with pytest.raises(ValueError):
        C.robots[0, 0] = 5.0


def test_entity_labels():
    assert entity_labels(2) == ["o1", "o2", "x1", "x2"]


def test_projections_anchor_is_exactly_zero():
    rng = np.random.default_rng(0)
    for _ in range(20):
        C = random_configuration(rng, 3, 4)
        lams = projections(C)
        assert lams[0] == 0.0


def test_cp_count_examples():
    C = Configuration(UNIT_OBSTACLES, [[0.5, 1.0], [0.5, -1.0]])
    assert cp_count(C) == 3  # projections {0, 1, 0.5, 0.5}

    colinear = Configuration(UNIT_OBSTACLES, [[2.0, 0.0], [3.0, 0.0]])
    assert cp_count(colinear) == 4  # n + 2

    C2 = Configuration(UNIT_OBSTACLES, [[0.0, 5.0]])
    assert cp_count(C2) == 2  # projections {0, 1, 0}


def test_cp_count_range():
    rng = np.random.default_rng(1)
    for n in (1, 2, 4):
        for d in (2, 4):
            for _ in range(20):
                C = random_configuration(rng, n, d)
                assert 2 <= cp_count(C) <= n + 2


def test_cp_count_merges_subtolerance_gaps():
    C = Configuration(UNIT_OBSTACLES, [[0.5, 1.0], [0.5 + 1e-12, -1.0]])
    assert cp_count(C, proj_tol=1e-9) == 3
    assert cp_count(C, proj_tol=1e-14) == 4


def test_epsilon_bar_examples():
    C = Configuration(UNIT_OBSTACLES, [[0.5, 1.0], [0.5, -1.0]])
    assert epsilon_bar(C) == pytest.approx(0.125, abs=1e-15)  # (1/4) min{1, .5, .5}

    C2 = Configuration(UNIT_OBSTACLES, [[0.0, 5.0]])
    assert epsilon_bar(C2) == pytest.approx(1.0 / 3.0, abs=1e-15)

    # equally spaced on the line at 0, 1, .., n+1 with |o2-o1| = 1
    n = 3
    robots = [[float(k), 0.0] for k in range(2, n + 2)]
    C3 = Configuration(UNIT_OBSTACLES, robots)
    assert epsilon_bar(C3) == pytest.approx(1.0 / (n + 2), abs=1e-15)


def test_epsilon_bar_positive_and_bounded():
    rng = np.random.default_rng(2)
    for _ in range(50):
        C = random_configuration(rng, 3, 2)
        eps = epsilon_bar(C)
        lams = projections(C)
        assert eps > 0
        assert (C.n + 2) * eps <= abs(lams[1] - lams[0]) + 1e-12


def test_invariants_under_rigid_motion():
    rng = np.random.default_rng(3)
    for _ in range(20):
        C = random_configuration(rng, 3, 2)
        shift = rng.normal(size=2)
        theta = rng.uniform(0, 2 * np.pi)
        rot = np.array([[np.cos(theta), -np.sin(theta)],
                        [np.sin(theta), np.cos(theta)]])
        moved = Configuration(C.obstacles @ rot.T + shift, C.robots @ rot.T + shift)
        assert cp_count(moved) == cp_count(C)
        assert epsilon_bar(moved) == pytest.approx(epsilon_bar(C), rel=1e-9)


def test_is_colinear_examples():
    assert is_colinear(Configuration(UNIT_OBSTACLES, [[2.0, 0.0]]))
    assert not is_colinear(Configuration(UNIT_OBSTACLES, [[2.0, 1e-3]]), tol=1e-9)


def test_flatten_output_is_colinear():
    rng = np.random.default_rng(4)
    for _ in range(20):
        C = random_configuration(rng, 3, 4)
        flat = flatten(desingularize(C, 1.0), 1.0)
        assert is_colinear(flat)


def test_colinear_implies_full_count():
    rng = np.random.default_rng(5)
    for _ in range(20):
        C = random_configuration(rng, 3, 2)
        flat = flatten(desingularize(C, 1.0), 1.0)
        assert cp_count(flat) == C.n + 2


def test_cp_count_semicontinuous_under_tiny_perturbations():
    rng = np.random.default_rng(6)
    base = Configuration(UNIT_OBSTACLES, [[0.5, 1.0], [0.5, -1.0], [0.0, 2.0]])
    before = cp_count(base)
    for _ in range(200):
        noise = rng.normal(size=base.robots.shape)
        noise *= 1e-11 / np.linalg.norm(noise)
        perturbed = Configuration(base.obstacles, base.robots + noise)
        assert cp_count(perturbed) >= before


def test_validate_query_pair_ok():
    start = Configuration(UNIT_OBSTACLES, [[0.5, 1.0]])
    goal = Configuration(UNIT_OBSTACLES, [[0.5, -1.0]])
    validate_query_pair(QueryPair(start, goal))


def test_validate_query_pair_rejects_swapped_obstacles():
    start = Configuration(UNIT_OBSTACLES, [[0.5, 1.0]])
    goal = Configuration([[1.0, 0.0], [0.0, 0.0]], [[0.5, -1.0]])
    with pytest.raises(ObstacleMismatch):
        validate_query_pair(QueryPair(start, goal))


def test_validate_query_pair_rejects_perturbed_obstacles():
    start = Configuration(UNIT_OBSTACLES, [[0.5, 1.0]])
    goal = Configuration([[0.0, 1e-6], [1.0, 0.0]], [[0.5, -1.0]])
    with pytest.raises(ObstacleMismatch):
        validate_query_pair(QueryPair(start, goal))
