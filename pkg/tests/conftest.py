"""Shared test fixtures for the omega-pushdown test suite."""

from __future__ import annotations

import pytest

from omega_pushdown.automaton.model import OmegaPda
from omega_pushdown.config import Settings
from omega_pushdown.grammar.construction import MixedGrammar, triple_pair_construct
from omega_pushdown.utils import setup_logging
from omega_pushdown.verification.instances import e1, e2, e3, e4

E1_SPEC = """\
states 1
initial-stack p
I 1 eps
P 1 eps
trans 1 p a 1 p p
trans 1 p b 1 eps
"""


@pytest.fixture(autouse=True, scope="session")
def _quiet_logging() -> None:
    setup_logging("warning")


@pytest.fixture
def settings() -> Settings:
    """Small suite sizes so verification tests stay fast."""
    return Settings(
        verify_random_instances=6,
        verify_counting_instances=4,
        verify_stack_free_instances=4,
        verify_word_len=4,
        verify_workers=2,
        factorization_max_len=4,
        factorization_max_steps=6,
    )


@pytest.fixture
def pda_e1() -> OmegaPda:
    """E1: x = a x x + b, no repeated states."""
    return e1()


@pytest.fixture
def pda_e2() -> OmegaPda:
    """E2: E1 with state 1 repeated."""
    return e2()


@pytest.fixture
def pda_e3() -> OmegaPda:
    """E3: two derivations of "a"."""
    return e3()


@pytest.fixture
def pda_e4() -> OmegaPda:
    """E4: E1 plus an ε-loop on p."""
    return e4()


@pytest.fixture
def grammar_e1(pda_e1: OmegaPda) -> MixedGrammar:
    """G_0 of E1."""
    return triple_pair_construct(pda_e1)


@pytest.fixture
def grammar_e2(pda_e2: OmegaPda) -> MixedGrammar:
    """G_1 of E2."""
    return triple_pair_construct(pda_e2)


@pytest.fixture
def e1_spec_text() -> str:
    """E1 in spec-file form."""
    return E1_SPEC
