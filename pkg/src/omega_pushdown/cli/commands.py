"""Command implementations; each returns the text to print and the exit status."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from omega_pushdown.automaton.lasso import LassoWord, lasso_accepts, lasso_normalize
from omega_pushdown.automaton.model import OmegaPda
from omega_pushdown.config import Settings
from omega_pushdown.grammar.construction import render_grammar, trim_grammar, triple_pair_construct
from omega_pushdown.grammar.derivations import word_weight
from omega_pushdown.utils import get_logger
from omega_pushdown.verification.suites import SUITES, SuiteContext, render_report, run_suites

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


@dataclass(frozen=True)
class CommandOutput:
    text: str
    status: int = EXIT_OK


def read_word(token: str) -> str:
    """Command-line words use ``eps`` for the empty word."""
    return "" if token == "eps" else token


def cmd_grammar(pda: OmegaPda, trim: bool = False) -> CommandOutput:
    grammar = triple_pair_construct(pda)
    if trim:
        grammar = trim_grammar(grammar)
    logger.info(
        "grammar_emitted",
        trimmed=trim,
        productions_x=len(grammar.productions_x),
        productions_z=len(grammar.productions_z),
    )
    return CommandOutput(render_grammar(grammar))


def cmd_accept(pda: OmegaPda, word: str) -> CommandOutput:
    pda.check_word(word)
    support = pda.support()
    weight = word_weight(triple_pair_construct(support), word)
    return CommandOutput("1\n" if weight else "0\n")


def cmd_count(pda: OmegaPda, word: str) -> CommandOutput:
    pda.check_word(word)
    counting = pda.counting_view()
    weight = word_weight(triple_pair_construct(counting), word)
    return CommandOutput(f"{counting.semiring.format(weight)}\n")


def cmd_accept_omega(pda: OmegaPda, u: str, v: str) -> CommandOutput:
    pda.check_word(u + v)
    word = lasso_normalize(LassoWord(u, v))
    accepted = lasso_accepts(pda.support(), word)
    logger.info("lasso_query", word=str(word), accepted=accepted)
    return CommandOutput("1\n" if accepted else "0\n")


def cmd_enumerate(pda: OmegaPda, max_len: int) -> CommandOutput:
    """Every word of length ≤ ``max_len`` with a nonzero weight, length first then lexicographic."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    grammar = triple_pair_construct(pda)
    sr = grammar.semiring
    lines = []
    for length in range(max_len + 1):
        for letters in itertools.product(pda.sigma, repeat=length):
            word = "".join(letters)
            weight = word_weight(grammar, word)
            if not sr.is_zero(weight):
                lines.append(f"{word}\t{sr.format(weight)}\n")
    return CommandOutput("".join(lines))


def cmd_verify(
    settings: Settings,
    suite: str | None = None,
    seed: int | None = None,
    pda: OmegaPda | None = None,
) -> CommandOutput:
    """Run one suite (or all of them) on the given automaton or on built-in and random ones."""
    names = [suite] if suite else list(SUITES)
    ctx = SuiteContext(
        settings=settings,
        seed=settings.verify_seed if seed is None else seed,
        instances=(("spec", pda),) if pda is not None else (),
    )
    results = run_suites(names, ctx)
    failed = any(not r.ok for r in results)
    return CommandOutput(render_report(results), EXIT_FAILED if failed else EXIT_OK)
