"""Tests for lasso words, the lasso product and Büchi acceptance."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omega_pushdown.automaton.lasso import (
    LassoWord,
    lasso_accepts,
    lasso_normalize,
    lasso_streams_equal,
    product_pda,
)
from omega_pushdown.automaton.model import OmegaPda, validate_pda
from omega_pushdown.verification.instances import LASSO_SUITE, LassoCase, lasso_cases

words = st.text(alphabet="ab", max_size=4)


@pytest.mark.parametrize(
    ("u", "v", "expected"),
    [
        ("", "abab", ("", "ab")),
        ("ab", "ab", ("", "ab")),
        ("a", "aa", ("", "a")),
        ("ba", "ab", ("ba", "ab")),
        ("aab", "b", ("aa", "b")),
        ("ab", "ba", ("ab", "ba")),
    ],
)
def test_normalize(u: str, v: str, expected: tuple[str, str]) -> None:
    """Test the canonical representative of a few lasso words."""
    assert lasso_normalize(LassoWord(u, v)) == LassoWord(*expected)


@given(words, words.filter(bool))
def test_normalize_keeps_the_stream(u: str, v: str) -> None:
    """Test that normalisation never changes the ω-word and is idempotent."""
    word = LassoWord(u, v)
    normal = lasso_normalize(word)
    assert lasso_streams_equal(word, normal)
    assert lasso_normalize(normal) == normal
    assert len(normal.u) <= len(u)
    assert len(normal.v) <= len(v)


def test_empty_period_is_rejected() -> None:
    """Test that v must be nonempty."""
    with pytest.raises(ValueError, match="nonempty"):
        LassoWord("a", "")


def test_prefix_and_positions() -> None:
    """Test unrolling of a lasso."""
    word = LassoWord("b", "aab")
    assert word.positions == 4
    assert word.prefix(8) == "baabaaba"
    assert word.next_position(3) == 1
    assert str(word) == "b(aab)^w"


def test_product_numbering(pda_e2: OmegaPda) -> None:
    """Test that product states (s, pos) keep repeated states first."""
    product = product_pda(pda_e2, LassoWord("", "ab"))
    assert product.n == 2
    assert product.repeated == 2
    assert validate_pda(product) == []
    assert product.initial[0]
    assert not product.initial[1]


@pytest.mark.parametrize(
    ("u", "v", "expected"),
    [
        ("", "a", True),
        ("", "b", False),
        ("", "ab", True),
        ("", "ba", False),
        ("a", "ab", True),
        ("b", "a", False),
        ("ab", "aab", True),
        ("aa", "b", False),
    ],
)
def test_e2_lassos(pda_e2: OmegaPda, u: str, v: str, expected: bool) -> None:
    """Test E2 on words whose prefixes do or do not stay balanced."""
    assert lasso_accepts(pda_e2, LassoWord(u, v)) is expected


def test_no_repeated_states_accept_nothing(pda_e1: OmegaPda) -> None:
    """Test that l = 0 rejects every lasso."""
    assert not any(lasso_accepts(pda_e1, LassoWord(u, v)) for u, v in LASSO_SUITE)


@pytest.mark.parametrize("case", lasso_cases(), ids=lambda case: case.name)
def test_curated_lasso_cases(case: LassoCase) -> None:
    """Test every curated automaton against its described language."""
    for u, v in LASSO_SUITE:
        word = LassoWord(u, v)
        assert lasso_accepts(case.pda, word) == case.expect(word), str(word)
