import numpy as np
import pytest

from credalbudget.credal import Act, CredalSet, LinearConstraint, StateSpace
from credalbudget.errors import GuardExceededError, InfeasibleCredalError


@pytest.fixture(scope="module")
def interval_credal():
    # p3 <= p1 and p3 <= 0.3 on three states
    return CredalSet.from_constraints(
        [
            LinearConstraint((-1.0, 0.0, 1.0), "<=", 0.0),
            LinearConstraint((0.0, 0.0, 1.0), "<=", 0.3),
        ],
        3,
    )


def test_upper_expectation_attained_at_corner(interval_credal):
    # gamble a5 - a1 = (-5, -1, 5); optimum sits at p = (0.3, 0.4, 0.3)
    assert interval_credal.upper_expectation([-5.0, -1.0, 5.0]) == pytest.approx(-0.4, abs=1e-9)
    expected = np.dot([0.3, 0.4, 0.3], [-5.0, -1.0, 5.0])
    assert interval_credal.upper_expectation([-5.0, -1.0, 5.0]) == pytest.approx(expected, abs=1e-9)


def test_zero_gamble_is_zero(interval_credal):
    assert interval_credal.upper_expectation(np.zeros(3)) == pytest.approx(0.0, abs=1e-12)


def test_dominated_gamble(interval_credal):
    # payoff difference (7,1,4) - (10,4,8) = (-3, -3, -4)
    assert interval_credal.upper_expectation([-3.0, -3.0, -4.0]) == pytest.approx(-3.0, abs=1e-9)


def test_lower_upper_duality(interval_credal):
    rng = np.random.default_rng(5)
    for _ in range(50):
        g = rng.normal(size=3) * 10
        assert interval_credal.lower_expectation(g) == -interval_credal.upper_expectation(-g)
    assert interval_credal.lower_expectation([5.0, 1.0, -5.0]) == pytest.approx(0.4, abs=1e-9)


def test_single_vertex_is_precise_expectation():
    credal = CredalSet.from_vertices([[0.2, 0.5, 0.3]])
    assert credal.upper_expectation([1.0, 2.0, 3.0]) == pytest.approx(2.1, abs=1e-12)
    assert credal.lower_expectation([1.0, 2.0, 3.0]) == pytest.approx(2.1, abs=1e-12)


def test_extreme_points_of_interval_credal(interval_credal):
    points = interval_credal.extreme_points()
    expected = {(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.3, 0.4, 0.3), (0.7, 0.0, 0.3)}
    got = {tuple(np.round(p, 9)) for p in points}
    assert got == expected


def test_extreme_points_match_lp_optimum(interval_credal):
    points = interval_credal.extreme_points()
    rng = np.random.default_rng(11)
    for _ in range(100):
        g = rng.normal(size=3) * 5
        assert interval_credal.upper_expectation(g) == pytest.approx(
            float(np.max(points @ g)), abs=1e-9
        )


def test_degenerate_polytope_single_vertex():
    credal = CredalSet.from_constraints([LinearConstraint((1.0, 0.0, 0.0), "=", 1.0)], 3)
    points = credal.extreme_points()
    assert points.shape == (1, 3)
    assert points[0] == pytest.approx([1.0, 0.0, 0.0], abs=1e-9)


def test_vertex_form_extreme_points_returns_stored():
    vertices = [[0.5, 0.5], [1.0, 0.0]]
    credal = CredalSet.from_vertices(vertices)
    assert np.allclose(credal.extreme_points(), vertices)


def test_enumeration_guard():
    n = 13
    row = LinearConstraint(tuple([1.0] + [0.0] * (n - 1)), "<=", 0.5)
    credal = CredalSet.from_constraints([row], n)
    with pytest.raises(GuardExceededError):
        credal.extreme_points()


def test_infeasible_constraints_rejected_at_load():
    with pytest.raises(InfeasibleCredalError):
        CredalSet.from_constraints([LinearConstraint((1.0, 0.0), "<=", -0.5)], 2)


def test_gamble_dimension_mismatch(interval_credal):
    with pytest.raises(ValueError, match="gamble"):
        interval_credal.upper_expectation([1.0, 2.0])


def test_constraint_dimension_mismatch():
    with pytest.raises(ValueError, match="coeffs"):
        CredalSet.from_constraints([LinearConstraint((1.0, 0.0), "<=", 0.5)], 3)


def test_vertices_validation_and_renormalization():
    with pytest.raises(ValueError, match="sums"):
        CredalSet.from_vertices([[0.5, 0.4]])
    with pytest.raises(ValueError, match="negative"):
        CredalSet.from_vertices([[1.1, -0.1]])
    credal = CredalSet.from_vertices([[0.5 + 4e-10, 0.5 + 4e-10]])
    assert credal.vertices.sum() == pytest.approx(1.0, abs=1e-15)
    nudged = CredalSet.from_vertices([[1.0 + 5e-10, -5e-10]])
    assert nudged.vertices.min() >= 0.0


def test_monotonicity_and_shift(interval_credal):
    rng = np.random.default_rng(42)
    for _ in range(100):
        f = rng.normal(size=3) * 4
        g = f + rng.uniform(0.0, 2.0, size=3)
        assert interval_credal.upper_expectation(f) <= interval_credal.upper_expectation(g) + 1e-9
        c = float(rng.normal() * 7)
        assert interval_credal.upper_expectation(f + c) == pytest.approx(
            interval_credal.upper_expectation(f) + c, abs=1e-9
        )
        assert np.min(f) - 1e-9 <= interval_credal.lower_expectation(f)
        assert interval_credal.lower_expectation(f) <= interval_credal.upper_expectation(f)
        assert interval_credal.upper_expectation(f) <= np.max(f) + 1e-9


def test_state_space_and_act_validation():
    with pytest.raises(ValueError, match="unique"):
        StateSpace(("w1", "w1"))
    with pytest.raises(ValueError, match="at least one"):
        StateSpace(())
    with pytest.raises(ValueError, match="finite"):
        Act("a1", (1.0, float("nan")))
    with pytest.raises(ValueError, match="relation"):
        LinearConstraint((1.0,), "<", 0.5)
