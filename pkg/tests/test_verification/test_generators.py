"""Tests for the random automaton generator and witness lengths."""

from __future__ import annotations

import pytest

from omega_pushdown.algebra.semiring import NAT_INF
from omega_pushdown.automaton.model import EPS, OmegaPda, validate_pda
from omega_pushdown.automaton.reachability import reach_set, star_triples
from omega_pushdown.config import SemiringName, Settings
from omega_pushdown.verification.generators import (
    EpsilonPolicy,
    GeneratorConfig,
    instance_rng,
    random_pda,
    witness_lengths,
)
from omega_pushdown.verification.instances import CURATED, build, lasso_cases


def _draw(config: GeneratorConfig, count: int = 40) -> list[OmegaPda]:
    return [random_pda(instance_rng(7, "test", k), config) for k in range(count)]


def test_random_instances_are_valid() -> None:
    """Test that every draw is a well-formed automaton within its bounds."""
    config = GeneratorConfig()
    for pda in _draw(config):
        assert validate_pda(pda) == []
        assert 1 <= pda.n <= config.max_states
        assert 0 <= pda.repeated <= pda.n
        assert any(pda.initial)
        assert pda.matrix.max_replacement <= config.max_replacement


def test_draws_are_reproducible() -> None:
    """Test that the same (seed, suite, index) gives the same automaton."""
    config = GeneratorConfig()
    first = random_pda(instance_rng(1, "lasso", 4), config)
    again = random_pda(instance_rng(1, "lasso", 4), config)
    other = [random_pda(instance_rng(2, "lasso", k), config) for k in range(5)]
    assert first == again
    assert any(pda != first for pda in other)


@pytest.mark.parametrize(
    ("policy", "longest"),
    [(EpsilonPolicy.NO_GROWTH, 1), (EpsilonPolicy.POPS_ONLY, 0)],
)
def test_epsilon_policies(policy: EpsilonPolicy, longest: int) -> None:
    """Test that ε-coefficients only sit in the allowed blocks."""
    for pda in _draw(GeneratorConfig(epsilon=policy)):
        for t in pda.matrix.transitions():
            if t.letter == EPS:
                assert len(t.replacement) <= longest


def test_gamma_preserving_instances() -> None:
    """Test that stack-free draws keep a single symbol on the stack."""
    for pda in _draw(GeneratorConfig(gamma_preserving=True, lettered_vectors=False)):
        assert pda.gamma == ("p",)
        assert all(t.replacement == ("p",) for t in pda.matrix.transitions())
        assert all(poly.letters in ((), (EPS,)) for poly in pda.initial)


def test_counting_semiring() -> None:
    """Test that ℕ^∞ draws carry weight 1."""
    for pda in _draw(GeneratorConfig(semiring=SemiringName.NAT_INF), count=10):
        assert pda.semiring == NAT_INF
        assert all(t.weight == 1 for t in pda.matrix.transitions())


def test_repeated_draws_keep_unit_weights() -> None:
    """Test that drawing the same entry twice does not add up its coefficient."""
    config = GeneratorConfig(semiring=SemiringName.NAT_INF, epsilon=EpsilonPolicy.POPS_ONLY)
    for k in range(50):
        pda = random_pda(instance_rng(0, "counting", k), config)
        assert all(t.weight == 1 for t in pda.matrix.transitions())


def test_config_from_settings(settings: Settings) -> None:
    """Test that settings bounds flow into the generator and overrides win."""
    config = GeneratorConfig.from_settings(settings, epsilon=EpsilonPolicy.POPS_ONLY)
    assert config.max_states == settings.max_states
    assert config.epsilon is EpsilonPolicy.POPS_ONLY


def test_witness_lengths_e1(pda_e1: OmegaPda) -> None:
    """Test the shortest emptying computation of E1."""
    assert witness_lengths(pda_e1) == {(1, "p", 1): 1}


def test_witness_lengths_compose() -> None:
    """Test that a push costs its own step plus both segments."""
    pda = build(2, [(1, "p", "a", 2, "qq"), (2, "q", "b", 2, "")], final={2: EPS})
    assert witness_lengths(pda) == {(2, "q", 2): 1, (1, "p", 2): 3}


CURATED_AND_LASSO = [make() for make in CURATED.values()] + [case.pda for case in lasso_cases()]


@pytest.mark.parametrize("pda", CURATED_AND_LASSO)
def test_witness_lengths_cover_reach(pda: OmegaPda) -> None:
    """Test that every reachable triple has a witness length and nothing else does."""
    assert frozenset(witness_lengths(pda)) == reach_set(star_triples(pda))
