import numpy as np
import pytest

from paraplan.errors import DegenerateObstacles, DimensionMismatch, OddDimension
from paraplan.geometry import OrientedLine, line_of, nu, project_point, project_scalar


def test_line_of_unit_axis():
    line = line_of([0, 0], [1, 0])
    assert np.array_equal(line.base, [0, 0])
    assert np.array_equal(line.direction, [1, 0])


def test_line_of_3_4_5():
    line = line_of([0, 0], [3, 4])
    assert np.allclose(line.direction, [0.6, 0.8], atol=0, rtol=0)


def test_line_of_coincident_points():
    with pytest.raises(DegenerateObstacles):
        line_of([1, 1], [1, 1])


def test_line_of_antisymmetric_direction():
    rng = np.random.default_rng(7)
    for _ in range(50):
        o1, o2 = rng.normal(size=(2, 4))
        fwd = line_of(o1, o2).direction
        back = line_of(o2, o1).direction
        assert np.abs(fwd + back).max() <= 1e-12


def test_project_scalar_examples():
    line = line_of([0, 0], [1, 0])
    assert project_scalar(line, [0.5, 1]) == pytest.approx(0.5, abs=1e-15)
    assert project_scalar(line, [0.0, 0.0]) == 0.0
    line345 = line_of([0, 0], [3, 4])
    assert project_scalar(line345, [3, 4]) == pytest.approx(5.0, abs=1e-12)


def test_project_scalar_dimension_mismatch():
    line = line_of([0, 0], [1, 0])
    with pytest.raises(DimensionMismatch):
        project_scalar(line, [1.0, 2.0, 3.0])


def test_project_point_examples():
    line = line_of([0, 0], [1, 0])
    assert np.allclose(project_point(line, [0.5, 1]), [0.5, 0], atol=1e-15)
    vertical = line_of([0, 0], [0, 1])
    assert np.allclose(project_point(vertical, [7, 2]), [0, 2], atol=1e-15)


def test_project_point_idempotent_and_minimizing():
    rng = np.random.default_rng(11)
    for _ in range(100):
        o1, o2 = rng.normal(size=(2, 4))
        line = line_of(o1, o2)
        x = rng.normal(size=4)
        p = project_point(line, x)
        assert np.abs(project_point(line, p) - p).max() <= 1e-12
        # no on-line probe can beat the projection
        for lam in rng.uniform(-5, 5, size=8):
            q = line.base + lam * line.direction
            assert np.linalg.norm(x - p) <= np.linalg.norm(x - q) + 1e-12


def test_project_point_batched():
    line = line_of([0, 0], [1, 0])
    pts = np.array([[0.5, 1.0], [2.0, -3.0]])
    assert np.allclose(project_point(line, pts), [[0.5, 0], [2.0, 0]])


def test_nu_examples():
    assert np.array_equal(nu([1.0, 0.0]), [0.0, 1.0])
    assert np.array_equal(nu([0.0, 1.0]), [-1.0, 0.0])
    assert np.array_equal(nu([1.0, 0.0, 0.0, 0.0]), [0.0, 1.0, 0.0, 0.0])


def test_nu_rejects_odd_dimension():
    with pytest.raises(OddDimension):
        nu([1.0, 2.0, 3.0])


def test_nu_orthogonal_and_norm_preserving():
    rng = np.random.default_rng(3)
    for d in (2, 4, 6):
        v = rng.normal(size=(500, d))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        w = nu(v)
        assert np.abs(np.einsum("ij,ij->i", v, w)).max() <= 1e-12
        assert np.abs(np.linalg.norm(w, axis=1) - 1.0).max() <= 1e-12


def test_nu_linear():
    rng = np.random.default_rng(5)
    for _ in range(100):
        u, v = rng.normal(size=(2, 6))
        a, b = rng.normal(size=2)
        lhs = nu(a * u + b * v)
        rhs = a * nu(u) + b * nu(v)
        assert np.abs(lhs - rhs).max() <= 1e-12


def test_oriented_line_requires_unit_direction():
    with pytest.raises(ValueError):
        OrientedLine(np.zeros(2), np.array([1.0, 1.0]))


def test_oriented_line_immutable():
    line = line_of([0, 0], [1, 0])
    with pytest.raises(ValueError):
        line.direction[0] = 2.0
