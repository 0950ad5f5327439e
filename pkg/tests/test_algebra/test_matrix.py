"""Tests for semiring matrices, their star and the finite Büchi check."""

from __future__ import annotations

import numpy as np
import pytest

from omega_pushdown.algebra.matrix import (
    SqMatrix,
    identity,
    mat_add,
    mat_mul,
    mat_star,
    nfa_buchi_lasso_accept,
)
from omega_pushdown.algebra.semiring import BOOLEAN, INF, NAT_INF


def _closure_oracle(adjacency: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated Boolean squaring."""
    n = adjacency.shape[0]
    reach = adjacency.astype(bool) | np.eye(n, dtype=bool)
    while True:
        squared = (reach.astype(int) @ reach.astype(int)) > 0
        if np.array_equal(squared, reach):
            return reach
        reach = squared


def test_rejects_non_square() -> None:
    """Test that ragged rows are refused."""
    with pytest.raises(ValueError, match="not square"):
        SqMatrix.from_rows(BOOLEAN, [[1, 0], [1]])


def test_nat_inf_star_of_nilpotent() -> None:
    """Test the star of a strictly upper-triangular matrix stays finite."""
    a = SqMatrix.from_rows(NAT_INF, [[0, 1], [0, 0]])
    star = mat_star(a)
    assert star.rows == ((1, 1), (0, 1))


def test_nat_inf_star_of_loop() -> None:
    """Test that a self-loop makes every reachable entry infinite."""
    a = SqMatrix.from_rows(NAT_INF, [[1, 1], [0, 0]])
    star = mat_star(a)
    assert star[0, 0] is INF
    assert star[0, 1] is INF
    assert star[1, 0] == 0
    assert star[1, 1] == 1


def test_mismatched_dimensions() -> None:
    """Test that products of different sizes fail loudly."""
    with pytest.raises(ValueError, match="dimension mismatch"):
        mat_mul(identity(BOOLEAN, 2), identity(BOOLEAN, 3))


@pytest.mark.parametrize("seed", range(8))
def test_boolean_star_matches_closure_oracle(seed: int) -> None:
    """Test A* against an independent closure on random Boolean matrices."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    adjacency = rng.random((n, n)) < 0.3
    star = mat_star(SqMatrix.from_rows(BOOLEAN, adjacency.tolist()))
    expected = _closure_oracle(adjacency)
    assert [list(row) for row in star.rows] == expected.tolist()


@pytest.mark.parametrize("seed", range(4))
def test_star_unfolding_identities(seed: int) -> None:
    """Test A* = I + A·A* = I + A*·A over ℕ^∞."""
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(1, 5))
    entries = np.where(rng.random((n, n)) < 0.5, 0, rng.integers(1, 3, size=(n, n)))
    a = SqMatrix.from_rows(NAT_INF, entries.tolist())
    star = mat_star(a)
    one = identity(NAT_INF, n)
    assert mat_add(one, mat_mul(a, star)) == star
    assert mat_add(one, mat_mul(star, a)) == star


def test_buchi_single_loop_accepts_its_letter() -> None:
    """Test that a repeated a-loop accepts a^ω and nothing over b."""
    letters = {"a": SqMatrix.from_rows(BOOLEAN, [[1]])}
    assert nfa_buchi_lasso_accept(letters, [True], [1], "", "a")
    assert not nfa_buchi_lasso_accept(letters, [True], [1], "", "b")


def test_buchi_epsilon_cycle_is_not_enough() -> None:
    """Test that a cycle of ε-moves alone does not accept."""
    letters = {
        "": SqMatrix.from_rows(BOOLEAN, [[1]]),
        "a": SqMatrix.from_rows(BOOLEAN, [[0]]),
    }
    assert not nfa_buchi_lasso_accept(letters, [True], [1], "", "a")


def test_buchi_needs_repeated_state_on_cycle() -> None:
    """Test that the repeated state must lie on the consuming cycle."""
    # 1 -a-> 2, 2 -a-> 2; only state 1 is repeated
    letters = {"a": SqMatrix.from_rows(BOOLEAN, [[0, 1], [0, 1]])}
    assert not nfa_buchi_lasso_accept(letters, [True, False], [1], "", "a")
    assert nfa_buchi_lasso_accept(letters, [True, False], [2], "", "a")


def test_buchi_rejects_empty_period() -> None:
    """Test that v must be nonempty."""
    letters = {"a": SqMatrix.from_rows(BOOLEAN, [[1]])}
    with pytest.raises(ValueError, match="nonempty"):
        nfa_buchi_lasso_accept(letters, [True], [1], "a", "")
