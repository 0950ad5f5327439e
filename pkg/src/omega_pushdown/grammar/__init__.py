"""Mixed context-free grammars from ω-pushdown automata."""

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
from omega_pushdown.grammar.derivations import (
    Verdict,
    derivation_count,
    derive_finite,
    omega_prefix_count,
    unambiguity_check,
    word_weight,
)

__all__ = [
    "X0",
    "Z0",
    "MixedGrammar",
    "Pair",
    "Production",
    "ProductionKind",
    "Triple",
    "Verdict",
    "derivation_count",
    "derive_finite",
    "omega_prefix_count",
    "productive_triples",
    "render_grammar",
    "trim_grammar",
    "triple_pair_construct",
    "unambiguity_check",
    "word_weight",
]
