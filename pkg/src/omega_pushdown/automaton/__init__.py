"""ω-pushdown automata: model, run oracles, saturation and lasso acceptance."""

from omega_pushdown.automaton.lasso import LassoWord, lasso_accepts, lasso_normalize, product_pda
from omega_pushdown.automaton.model import (
    EPS,
    AlphabetError,
    Configuration,
    InvalidAutomatonError,
    LetterPoly,
    OmegaPda,
    PdMatrix,
    Run,
    Transition,
    step,
    validate_pda,
)
from omega_pushdown.automaton.reachability import (
    a_m_edges,
    check_factorization,
    omega_pairs,
    star_triples,
)
from omega_pushdown.automaton.runs import enumerate_accepting_runs, enumerate_omega_run_prefixes

__all__ = [
    "EPS",
    "AlphabetError",
    "Configuration",
    "InvalidAutomatonError",
    "LassoWord",
    "LetterPoly",
    "OmegaPda",
    "PdMatrix",
    "Run",
    "Transition",
    "a_m_edges",
    "check_factorization",
    "enumerate_accepting_runs",
    "enumerate_omega_run_prefixes",
    "lasso_accepts",
    "lasso_normalize",
    "omega_pairs",
    "product_pda",
    "star_triples",
    "step",
    "validate_pda",
]
