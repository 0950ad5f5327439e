"""Seeded random automata for the verification suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import StrEnum

from omega_pushdown.algebra.semiring import SemiringValue, get_semiring
from omega_pushdown.automaton.model import EPS, OmegaPda, Stack, Transition
from omega_pushdown.automaton.reachability import TripleKey
from omega_pushdown.config import SemiringName, Settings

STACK_SYMBOLS = "pqrstu"
LETTERS = "abcd"


class EpsilonPolicy(StrEnum):
    """Which blocks may carry ε-coefficients."""

    ANY = "any"
    NO_GROWTH = "no-growth"  # only blocks with |π| ≤ 1
    POPS_ONLY = "pops-only"  # only blocks with π = ε


@dataclass(frozen=True)
class GeneratorConfig:
    semiring: SemiringName = SemiringName.BOOLEAN
    gamma_preserving: bool = False
    epsilon: EpsilonPolicy = EpsilonPolicy.ANY
    lettered_vectors: bool = True
    max_states: int = 3
    max_gamma: int = 3
    max_sigma: int = 2
    max_blocks: int = 6
    max_replacement: int = 2

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: object) -> GeneratorConfig:
        bounds = {
            "max_states": settings.max_states,
            "max_gamma": settings.max_gamma,
            "max_sigma": settings.max_sigma,
            "max_blocks": settings.max_blocks,
            "max_replacement": settings.max_replacement,
        }
        bounds.update(overrides)
        return cls(**bounds)  # type: ignore[arg-type]


def _epsilon_allowed(policy: EpsilonPolicy, replacement_length: int) -> bool:
    match policy:
        case EpsilonPolicy.ANY:
            return True
        case EpsilonPolicy.NO_GROWTH:
            return replacement_length <= 1
        case EpsilonPolicy.POPS_ONLY:
            return replacement_length == 0


def random_pda(rng: random.Random, config: GeneratorConfig) -> OmegaPda:
    """Draw one automaton within ``config``'s bounds.

    Γ-preserving automata have a single stack symbol that every block keeps,
    so they behave like finite automata. Weights are 0/1.
    """
    semiring = get_semiring(config.semiring)
    n = rng.randint(1, config.max_states)
    if config.gamma_preserving:
        gamma = tuple(STACK_SYMBOLS[:1])
    else:
        gamma = tuple(STACK_SYMBOLS[: rng.randint(1, config.max_gamma)])
    sigma = tuple(LETTERS[: rng.randint(1, config.max_sigma)])

    # One unit weight per entry, however often it is drawn.
    transitions: dict[tuple[int, str, str, int, Stack], Transition] = {}
    for _ in range(rng.randint(1, config.max_blocks)):
        if config.gamma_preserving:
            top, replacement = gamma[0], (gamma[0],)
        else:
            top = rng.choice(gamma)
            length = rng.randint(0, config.max_replacement)
            replacement = tuple(rng.choice(gamma) for _ in range(length))
        letters = list(sigma)
        if _epsilon_allowed(config.epsilon, len(replacement)):
            letters.append(EPS)
        for _ in range(rng.randint(1, 2)):
            source, letter, target = rng.randint(1, n), rng.choice(letters), rng.randint(1, n)
            transitions[source, top, letter, target, replacement] = Transition(
                source, top, letter, target, replacement, semiring.one
            )

    def vector(minimum: int) -> dict[int, dict[str, SemiringValue]]:
        chosen = [s for s in range(1, n + 1) if rng.random() < 0.5]
        if len(chosen) < minimum:
            chosen = [rng.randint(1, n)]
        out: dict[int, dict[str, SemiringValue]] = {}
        for s in chosen:
            letter = EPS
            if config.lettered_vectors and rng.random() < 0.3:
                letter = rng.choice(sigma)
            out[s] = {letter: semiring.one}
        return out

    return OmegaPda.from_transitions(
        semiring,
        n,
        list(transitions.values()),
        initial=vector(1),
        final=vector(0),
        initial_stack=gamma[0],
        gamma=gamma,
        sigma=sigma,
        repeated=rng.randint(0, n),
    )


def instance_rng(seed: int, suite: str, index: int) -> random.Random:
    """Independent, reproducible stream per (seed, suite, instance)."""
    return random.Random(f"{seed}:{suite}:{index}")


def witness_lengths(pda: OmegaPda) -> dict[TripleKey, int]:
    """Length of the shortest computation from (i, p) to (j, ε), per reachable triple.

    Min-plus relaxation of system x_p = Σ M_{p,π} x_{π}: a block entry costs
    one step and each replacement symbol costs its own shortest segment.
    """
    best: dict[TripleKey, int] = {}
    transitions = list(pda.matrix.transitions())
    changed = True
    while changed:
        changed = False
        for t in transitions:
            frontier = {t.target: 1}
            for symbol in t.replacement:
                advanced: dict[int, int] = {}
                for m, cost in frontier.items():
                    for (i, p, j), segment in best.items():
                        if i == m and p == symbol:
                            total = cost + segment
                            if total < advanced.get(j, total + 1):
                                advanced[j] = total
                frontier = advanced
            for j, cost in frontier.items():
                key = (t.source, t.top, j)
                if cost < best.get(key, cost + 1):
                    best[key] = cost
                    changed = True
    return best
