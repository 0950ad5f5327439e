"""Hand-analysed automata with known behaviour.

E1 reads the Łukasiewicz-style language of x = a x x + b; E2 is E1 with its
state repeated, so its ω-words are those whose every prefix has at least as
many a's as b's. E3 and E4 are ambiguous variants used for counting.

Each :class:`LassoCase` pairs an automaton with a predicate on normalised
lasso words that says exactly which u·v^ω it accepts.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

from omega_pushdown.algebra.semiring import BOOLEAN, NAT_INF, Semiring, SemiringValue
from omega_pushdown.automaton.lasso import LassoWord, lasso_normalize
from omega_pushdown.automaton.model import EPS, OmegaPda, Transition

LASSO_SUITE: tuple[tuple[str, str], ...] = (
    ("", "a"),
    ("", "b"),
    ("", "ab"),
    ("", "ba"),
    ("a", "ab"),
    ("aa", "b"),
    ("b", "a"),
    ("ab", "aab"),
    ("", "aab"),
    ("ba", "ab"),
)

Row = tuple[int, str, str, int, str]
"""(source, top, letter, target, replacement) with one-character stack symbols."""


def build(
    n: int,
    rows: Iterable[Row],
    *,
    repeated: int = 0,
    initial: dict[int, str] | None = None,
    final: dict[int, str] | None = None,
    initial_stack: str = "p",
    semiring: Semiring = BOOLEAN,
    weight: SemiringValue | None = None,
    sigma: tuple[str, ...] = ("a", "b"),
) -> OmegaPda:
    """Compact constructor; ``initial``/``final`` map a state to its single letter."""
    value = semiring.one if weight is None else weight
    transitions = [
        Transition(i, top, letter, j, tuple(replacement), value)
        for i, top, letter, j, replacement in rows
    ]
    return OmegaPda.from_transitions(
        semiring,
        n,
        transitions,
        initial={s: {letter: semiring.one} for s, letter in (initial or {1: EPS}).items()},
        final={s: {letter: semiring.one} for s, letter in (final or {}).items()},
        initial_stack=initial_stack,
        sigma=sigma,
        repeated=repeated,
    )


def e1() -> OmegaPda:
    return build(1, [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, "")], final={1: EPS})


def e2() -> OmegaPda:
    return e1().with_repeated(1)


def e3() -> OmegaPda:
    return build(
        1,
        [(1, "p", "a", 1, ""), (1, "p", "a", 1, "q"), (1, "q", EPS, 1, "")],
        final={1: EPS},
        sigma=("a",),
    )


def e4() -> OmegaPda:
    return build(
        1,
        [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, ""), (1, "p", EPS, 1, "p")],
        final={1: EPS},
    )


CURATED: dict[str, Callable[[], OmegaPda]] = {"E1": e1, "E2": e2, "E3": e3, "E4": e4}


def balanced(word: LassoWord, up: str = "a", down: str = "b") -> bool:
    """Every prefix of u·v^ω has at least as many ``up`` as ``down`` letters."""
    drift = word.v.count(up) - word.v.count(down)
    if drift < 0:
        return False
    height = 0
    for letter in word.u + word.v:
        height += (letter == up) - (letter == down)
        if height < 0:
            return False
    return True


def drop_first(word: LassoWord) -> LassoWord:
    if word.u:
        return LassoWord(word.u[1:], word.v)
    return LassoWord("", word.v[1:] + word.v[:1])


@dataclass(frozen=True)
class LassoCase:
    name: str
    pda: OmegaPda
    expected: Callable[[LassoWord], bool]
    description: str = ""

    def expect(self, word: LassoWord) -> bool:
        return self.expected(lasso_normalize(word))


def _never(_: LassoWord) -> bool:
    return False


def _always(_: LassoWord) -> bool:
    return True


def _two_state_counter(repeated: int) -> OmegaPda:
    # State 1 is entered by b, state 2 by a.
    return build(
        2,
        [
            (1, "p", "a", 2, "pp"),
            (2, "p", "a", 2, "pp"),
            (1, "p", "b", 1, ""),
            (2, "p", "b", 1, ""),
        ],
        repeated=repeated,
        initial={2: EPS},
    )


def _alternator(repeated: int) -> OmegaPda:
    return build(
        2,
        [(2, "p", "a", 1, "qp"), (1, "q", "b", 2, "")],
        repeated=repeated,
        initial={2: EPS},
    )


def lasso_cases() -> list[LassoCase]:
    """Curated automata with exact descriptions of their accepted lasso words."""
    counter = build(1, [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, "")], repeated=1)
    return [
        LassoCase("E2", e2(), balanced, "prefixes never have more b than a"),
        LassoCase("E1", e1(), _never, "no repeated states"),
        LassoCase(
            "a-loop",
            build(1, [(1, "p", "a", 1, "p")], repeated=1),
            lambda w: set(w.u + w.v) == {"a"},
            "only a^ω",
        ),
        LassoCase("a-loop-l0", build(1, [(1, "p", "a", 1, "p")]), _never),
        LassoCase(
            "infinitely-many-b",
            build(
                2,
                [
                    (1, "p", "b", 1, "p"),
                    (2, "p", "b", 1, "p"),
                    (1, "p", "a", 2, "p"),
                    (2, "p", "a", 2, "p"),
                ],
                repeated=1,
                initial={2: EPS},
            ),
            lambda w: "b" in w.v,
        ),
        LassoCase(
            "finitely-many-b",
            build(
                2,
                [
                    (2, "p", "a", 2, "p"),
                    (2, "p", "b", 2, "p"),
                    (2, "p", "a", 1, "p"),
                    (1, "p", "a", 1, "p"),
                ],
                repeated=1,
                initial={2: EPS},
            ),
            lambda w: "b" not in w.v,
        ),
        LassoCase(
            "swapped-counter",
            build(1, [(1, "p", "b", 1, "pp"), (1, "p", "a", 1, "")], repeated=1),
            lambda w: balanced(w, up="b", down="a"),
        ),
        LassoCase(
            "counter-initial-a",
            build(
                1,
                [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, "")],
                repeated=1,
                initial={1: "a"},
            ),
            lambda w: (w.u + w.v)[0] == "a" and balanced(drop_first(w)),
        ),
        LassoCase("E4-l1", e4().with_repeated(1), balanced, "ε-loops read nothing"),
        LassoCase(
            "q-counter",
            build(1, [(1, "p", "a", 1, "qp"), (1, "q", "a", 1, "qq"), (1, "q", "b", 1, "")], repeated=1),
            balanced,
        ),
        LassoCase(
            "q-counter-pop",
            build(
                1,
                [
                    (1, "p", "a", 1, "qp"),
                    (1, "q", "a", 1, "qq"),
                    (1, "q", "b", 1, ""),
                    (1, "p", "b", 1, ""),
                ],
                repeated=1,
            ),
            balanced,
        ),
        LassoCase(
            "two-state-l1",
            _two_state_counter(1),
            lambda w: balanced(w) and "b" in w.v,
            "state 1 is entered only by b",
        ),
        LassoCase("two-state-l2", _two_state_counter(2), balanced),
        LassoCase("two-state-l0", _two_state_counter(0), _never),
        LassoCase(
            "eps-switch",
            build(
                2,
                [
                    (2, "p", "a", 2, "p"),
                    (2, "p", "b", 2, "p"),
                    (2, "p", EPS, 1, "p"),
                    (1, "p", "b", 1, "p"),
                ],
                repeated=1,
                initial={2: EPS},
            ),
            lambda w: set(w.v) == {"b"},
        ),
        LassoCase(
            "alternator",
            _alternator(1),
            lambda w: w == LassoWord("", "ab"),
            "state 1 only occurs with q on top",
        ),
        LassoCase("alternator-l0", _alternator(0), _never),
        LassoCase(
            "counter-nat-inf",
            build(
                1,
                [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, "")],
                repeated=1,
                semiring=NAT_INF,
                weight=2,
            ),
            balanced,
        ),
        LassoCase(
            "a-star-b-omega",
            build(
                2,
                [(2, "p", "a", 2, "p"), (2, "p", "b", 1, "p"), (1, "p", "b", 1, "p")],
                repeated=1,
                initial={2: EPS},
            ),
            lambda w: w.v == "b" and "b" not in w.u,
        ),
        LassoCase("push-anything", build(1, [(1, "p", "a", 1, "pp"), (1, "p", "b", 1, "pp")], repeated=1), _always),
        LassoCase(
            "no-initial",
            OmegaPda.from_transitions(
                BOOLEAN,
                1,
                counter.matrix.transitions(),
                initial={},
                final={},
                initial_stack="p",
                sigma=("a", "b"),
                repeated=1,
            ),
            _never,
        ),
        LassoCase(
            "reset-counter",
            build(
                1,
                [
                    (1, "p", "a", 1, "qp"),
                    (1, "p", "b", 1, "p"),
                    (1, "q", "a", 1, "qq"),
                    (1, "q", "b", 1, ""),
                ],
                repeated=1,
            ),
            _always,
            "b at the bottom keeps the stack",
        ),
        LassoCase("E3-l1", e3().with_repeated(1), _never, "the stack always empties"),
    ]
