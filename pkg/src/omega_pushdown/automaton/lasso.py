"""Büchi acceptance of ultimately periodic words u·v^ω.

The lasso word is compiled into a deterministic letter consumer with
positions 0..|u|+|v|-1 (the last position wraps to |u|) and multiplied into
the automaton's states. Acceptance is then a question about the ω-pairs of
the product.
"""

from __future__ import annotations

from dataclasses import dataclass

from omega_pushdown.algebra.semiring import SemiringValue
from omega_pushdown.automaton.model import EPS, OmegaPda, Transition, ensure_valid
from omega_pushdown.automaton.reachability import omega_pairs
from omega_pushdown.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LassoWord:
    """The ω-word u·v^ω, stored as given."""

    u: str
    v: str

    def __post_init__(self) -> None:
        if not self.v:
            raise ValueError("lasso period v must be nonempty")

    @property
    def positions(self) -> int:
        return len(self.u) + len(self.v)

    def letter_at(self, pos: int) -> str:
        """Letter read at lasso position ``pos`` (0 ≤ pos < positions)."""
        return (self.u + self.v)[pos]

    def next_position(self, pos: int) -> int:
        return pos + 1 if pos + 1 < self.positions else len(self.u)

    def prefix(self, length: int) -> str:
        """The first ``length`` letters of the ω-word."""
        if length <= len(self.u):
            return self.u[:length]
        rest = length - len(self.u)
        return self.u + self.v * (rest // len(self.v)) + self.v[: rest % len(self.v)]

    def __str__(self) -> str:
        return f"{self.u}({self.v})^w"


def _primitive_root(word: str) -> str:
    for d in range(1, len(word) + 1):
        if len(word) % d == 0 and word[:d] * (len(word) // d) == word:
            return word[:d]
    return word


def lasso_normalize(word: LassoWord) -> LassoWord:
    """Canonical representative: primitive period, then the shortest possible prefix."""
    u, v = word.u, _primitive_root(word.v)
    while u and u[-1] == v[-1]:
        u, v = u[:-1], v[-1] + v[:-1]
    return LassoWord(u, v)


def lasso_streams_equal(a: LassoWord, b: LassoWord) -> bool:
    """Compare the ω-words letter by letter; max prefix plus twice the periods suffices."""
    horizon = max(len(a.u), len(b.u)) + 2 * len(a.v) * len(b.v)
    return a.prefix(horizon) == b.prefix(horizon)


def product_pda(pda: OmegaPda, word: LassoWord) -> OmegaPda:
    """Product of ``pda`` with the lasso consumer of ``word`` (normalised first).

    Product state (s, pos) is numbered (s-1)·L + pos + 1 for L lasso
    positions, so the repeated states are exactly those with s ≤ l. Final
    weights are dropped; they play no part in infinite runs.
    """
    ensure_valid(pda)
    word = lasso_normalize(word)
    size = word.positions

    def state(s: int, pos: int) -> int:
        return (s - 1) * size + pos + 1

    transitions = []
    for t in pda.matrix.transitions():
        for pos in range(size):
            if t.letter == EPS:
                target_pos = pos
            elif word.letter_at(pos) == t.letter:
                target_pos = word.next_position(pos)
            else:
                continue
            transitions.append(
                Transition(
                    state(t.source, pos),
                    t.top,
                    t.letter,
                    state(t.target, target_pos),
                    t.replacement,
                    t.weight,
                )
            )

    initial: dict[int, dict[str, SemiringValue]] = {}
    for s, poly in zip(pda.states, pda.initial, strict=True):
        for letter, weight in poly:
            if letter == EPS:
                initial.setdefault(state(s, 0), {})[EPS] = weight
            elif word.letter_at(0) == letter:
                initial.setdefault(state(s, word.next_position(0)), {})[letter] = weight

    return OmegaPda.from_transitions(
        pda.semiring,
        pda.n * size,
        transitions,
        initial=initial,
        final={},
        initial_stack=pda.initial_stack,
        gamma=pda.gamma,
        sigma=pda.sigma,
        repeated=pda.repeated * size,
    )


def lasso_accepts(pda: OmegaPda, word: LassoWord) -> bool:
    """Whether u·v^ω has a nonzero coefficient in I(M^{ω,l})_{p₀} (Boolean reading)."""
    if pda.repeated == 0:
        return False
    product = product_pda(pda, word)
    pairs = omega_pairs(product)
    accepted = any(
        (s, product.initial_stack) in pairs
        for s, poly in zip(product.states, product.initial, strict=True)
        if poly
    )
    logger.debug(
        "lasso_checked",
        word=str(lasso_normalize(word)),
        product_states=product.n,
        omega_pairs=len(pairs),
        accepted=accepted,
    )
    return accepted
