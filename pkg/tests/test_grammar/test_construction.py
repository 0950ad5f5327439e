"""Tests for the triple-pair construction, trimming and grammar emission."""

from __future__ import annotations

import pytest

from omega_pushdown.algebra.semiring import NAT_INF
from omega_pushdown.automaton.model import InvalidAutomatonError, LetterPoly, OmegaPda
from omega_pushdown.grammar.construction import (
    X0,
    Z0,
    MixedGrammar,
    Pair,
    Production,
    ProductionKind,
    Triple,
    productive_triples,
    render_grammar,
    trim_grammar,
    triple_pair_construct,
)
from omega_pushdown.verification.generators import GeneratorConfig, instance_rng, random_pda
from omega_pushdown.verification.instances import CURATED, build, lasso_cases

E1_GRAMMAR = """\
#semiring boolean
#l 0
#repeated-z
x0 -> [1,p,1]
[1,p,1] -> a [1,p,1] [1,p,1]
[1,p,1] -> b
z0 -> [1,p]
[1,p] -> a [1,p,1] [1,p]
[1,p] -> a [1,p]
"""


def test_e1_productions(grammar_e1: MixedGrammar) -> None:
    """Test G_0 of E1 production by production."""
    assert [str(p) for p in grammar_e1.productions_x] == [
        "x0 -> [1,p,1]",
        "[1,p,1] -> a [1,p,1] [1,p,1]",
        "[1,p,1] -> b",
    ]
    assert all(p.kind is ProductionKind.FINITE for p in grammar_e1.productions_x)
    assert all(p.kind is ProductionKind.INFINITE for p in grammar_e1.productions_z)


def test_e2_pair_productions(grammar_e2: MixedGrammar) -> None:
    """Test the Z-productions of E2 and its repeated pairs."""
    assert [str(p) for p in grammar_e2.productions_z] == [
        "z0 -> [1,p]",
        "[1,p] -> a [1,p,1] [1,p]",
        "[1,p] -> a [1,p]",
    ]
    assert grammar_e2.repeated_z == (Pair(1, "p"),)
    assert grammar_e2.rules(Pair(1, "p"))[0].terminal == "a"


def test_render_e1(grammar_e1: MixedGrammar) -> None:
    """Test the emitted text of G_0 for E1."""
    assert render_grammar(grammar_e1) == E1_GRAMMAR


def test_render_weights() -> None:
    """Test that weights other than 1 are shown after the production."""
    weighted = build(1, [(1, "p", "b", 1, "")], final={1: ""}, semiring=NAT_INF, weight=3)
    text = render_grammar(triple_pair_construct(weighted))
    assert "[1,p,1] -> b  # 3\n" in text
    assert text.startswith("#semiring nat-inf\n#l 0\n")


def test_render_repeated_header(grammar_e2: MixedGrammar) -> None:
    """Test the header of a grammar with repeated pairs."""
    assert render_grammar(grammar_e2).splitlines()[1:3] == ["#l 1", "#repeated-z [1,p]"]


def test_duplicate_productions_are_merged() -> None:
    """Test that equal (lhs, rhs) pairs from different blocks add their weights."""
    doubled = build(
        1,
        [(1, "p", "a", 1, "pp"), (1, "p", "a", 1, "p")],
        semiring=NAT_INF,
        repeated=1,
    )
    grammar = triple_pair_construct(doubled)
    loops = [p for p in grammar.productions_z if p.lhs == Pair(1, "p") and p.rhs == ("a", Pair(1, "p"))]
    assert len(loops) == 1
    assert loops[0].weight == 2


def test_epsilon_production_text() -> None:
    """Test that an empty right-hand side prints as eps."""
    production = Production(Triple(1, "q", 1), (), ProductionKind.FINITE)
    assert str(production) == "[1,q,1] -> eps"
    assert production.terminal == ""
    assert production.variables == ()


def test_variables_of_the_grammar(grammar_e1: MixedGrammar) -> None:
    """Test the variable sets X and Z."""
    assert grammar_e1.x_variables == (X0, Triple(1, "p", 1))
    assert grammar_e1.z_variables == (Z0, Pair(1, "p"))


def test_invalid_automaton_is_refused(pda_e1: OmegaPda) -> None:
    """Test that construction validates its input."""
    with pytest.raises(InvalidAutomatonError):
        triple_pair_construct(pda_e1.with_repeated(5))


def test_trim_without_repeated_states(grammar_e1: MixedGrammar) -> None:
    """Test that l = 0 empties P_Z and keeps the useful X part."""
    trimmed = trim_grammar(grammar_e1)
    assert len(trimmed.productions_x) == 3
    assert trimmed.productions_z == ()


def test_trim_keeps_live_pairs(grammar_e2: MixedGrammar) -> None:
    """Test that E2 is already trim."""
    trimmed = trim_grammar(grammar_e2)
    assert trimmed.productions_x == grammar_e2.productions_x
    assert trimmed.productions_z == grammar_e2.productions_z


def test_trim_drops_unproductive_triples() -> None:
    """Test that triples through a state without pops disappear."""
    pda = build(2, [(1, "p", "a", 2, "pp"), (1, "p", "b", 1, "")], final={1: ""})
    grammar = triple_pair_construct(pda)
    assert productive_triples(grammar) == frozenset({Triple(1, "p", 1)})
    trimmed = trim_grammar(grammar)
    assert [str(p) for p in trimmed.productions_x] == ["x0 -> [1,p,1]", "[1,p,1] -> b"]


def _entries(vector: tuple[LetterPoly, ...]) -> int:
    return sum(1 for poly in vector for _ in poly)


def _expected_sizes(pda: OmegaPda) -> tuple[int, int]:
    """|P_X| and |P_Z| counted from block shapes alone."""
    n = pda.n
    transitions = list(pda.matrix.transitions())
    finite = _entries(pda.initial) * _entries(pda.final)
    finite += sum(n ** len(t.replacement) for t in transitions)
    # Entries sharing source, top, letter, target and a replacement prefix give equal rules.
    prefixes = {
        (t.source, t.top, t.letter, t.target, t.replacement[:j])
        for t in transitions
        for j in range(1, len(t.replacement) + 1)
    }
    infinite = _entries(pda.initial) + sum(n ** (len(key[-1]) - 1) for key in prefixes)
    return finite, infinite


SHAPED = (
    [make() for make in CURATED.values()]
    + [case.pda for case in lasso_cases()]
    + [random_pda(instance_rng(9, "shapes", k), GeneratorConfig()) for k in range(30)]
)


@pytest.mark.parametrize("pda", SHAPED)
def test_production_counts_follow_block_shapes(pda: OmegaPda) -> None:
    """Test that the grammar has exactly the rules its blocks call for."""
    grammar = triple_pair_construct(pda)
    assert (len(grammar.productions_x), len(grammar.productions_z)) == _expected_sizes(pda)
