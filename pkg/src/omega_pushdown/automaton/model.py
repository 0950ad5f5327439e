"""The ω-pushdown automaton model.

A pushdown transition matrix is stored as finitely many blocks M_{p,π}: the
block for top symbol ``p`` and replacement ``π`` is an n×n grid of letter
polynomials. The full matrix over Γ*×Γ* is never built; a lookup for a pair
of stacks resolves through the shift rule M_{pπ′,ππ′} = M_{p,π}.

The top of the pushdown is the leftmost symbol of a stack tuple, so a
replacement ``("q", "p")`` leaves ``q`` on top.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from omega_pushdown.algebra.semiring import BOOLEAN, NAT_INF, Semiring, SemiringValue

EPS = ""
"""The empty word, also used as the ε letter of a letter polynomial."""

Stack = tuple[str, ...]


class InvalidAutomatonError(ValueError):
    """Raised when an operation needs a well-formed automaton and gets a broken one."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = violations
        super().__init__("invalid automaton: " + "; ".join(violations))


class AlphabetError(ValueError):
    """A word uses a letter outside the input alphabet."""


def format_stack(stack: Stack) -> str:
    if not stack:
        return "eps"
    if all(len(symbol) == 1 for symbol in stack):
        return "".join(stack)
    return " ".join(stack)


def format_letter(letter: str) -> str:
    return letter if letter else "eps"


@dataclass(frozen=True)
class LetterPoly:
    """A finite map from Σ ∪ {ε} to nonzero semiring values, sorted by letter."""

    terms: tuple[tuple[str, SemiringValue], ...] = ()

    @classmethod
    def of(cls, semiring: Semiring, coefficients: Mapping[str, SemiringValue]) -> LetterPoly:
        """Build a polynomial, dropping zero coefficients."""
        return cls(
            tuple(
                (letter, semiring.coerce(value))
                for letter, value in sorted(coefficients.items())
                if not semiring.is_zero(value)
            )
        )

    def get(self, letter: str) -> SemiringValue | None:
        for key, value in self.terms:
            if key == letter:
                return value
        return None

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(letter for letter, _ in self.terms)

    def __iter__(self) -> Iterator[tuple[str, SemiringValue]]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class Transition:
    """One nonzero coefficient of a block: from ``source`` with ``top`` on the stack,
    read ``letter``, go to ``target`` and replace ``top`` by ``replacement``."""

    source: int
    top: str
    letter: str
    target: int
    replacement: Stack
    weight: SemiringValue = True


@dataclass(frozen=True)
class Block:
    """The block M_{top,replacement}, stored sparsely as (i, j, polynomial) entries."""

    top: str
    replacement: Stack
    entries: tuple[tuple[int, int, LetterPoly], ...]

    def entry(self, i: int, j: int) -> LetterPoly:
        for source, target, poly in self.entries:
            if source == i and target == j:
                return poly
        return LetterPoly()

    def grid(self, n: int) -> tuple[tuple[LetterPoly, ...], ...]:
        """The block as a full n×n grid (1-based states mapped to 0-based rows)."""
        return tuple(tuple(self.entry(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))

    @property
    def label(self) -> str:
        return f"({self.top},{format_stack(self.replacement)})"


@dataclass(frozen=True)
class PdMatrix:
    """A pushdown transition matrix given by its finitely many nonzero blocks."""

    n: int
    gamma: tuple[str, ...]
    blocks: tuple[Block, ...]

    @cached_property
    def _by_key(self) -> dict[tuple[str, Stack], Block]:
        return {(block.top, block.replacement): block for block in self.blocks}

    @cached_property
    def _by_top(self) -> dict[str, tuple[Block, ...]]:
        index: dict[str, list[Block]] = {}
        for block in self.blocks:
            index.setdefault(block.top, []).append(block)
        return {top: tuple(blocks) for top, blocks in index.items()}

    def block(self, top: str, replacement: Stack) -> Block | None:
        return self._by_key.get((top, replacement))

    def blocks_for(self, top: str) -> tuple[Block, ...]:
        return self._by_top.get(top, ())

    def lookup(self, pi1: Stack, pi2: Stack) -> Block | None:
        """Resolve M_{π₁,π₂}: nonzero only if π₁ = pπ′ and π₂ = ππ′ for a stored M_{p,π}."""
        if not pi1:
            return None
        suffix = pi1[1:]
        cut = len(pi2) - len(suffix)
        if cut < 0 or pi2[cut:] != suffix:
            return None
        return self.block(pi1[0], pi2[:cut])

    def transitions(self) -> Iterator[Transition]:
        for block in self.blocks:
            for i, j, poly in block.entries:
                for letter, weight in poly:
                    yield Transition(i, block.top, letter, j, block.replacement, weight)

    @property
    def max_replacement(self) -> int:
        return max((len(block.replacement) for block in self.blocks), default=0)


@dataclass(frozen=True)
class OmegaPda:
    """An ω-pushdown automaton (n, Γ, Σ, I, M, P, p₀, l); states 1..l are repeated."""

    semiring: Semiring
    n: int
    gamma: tuple[str, ...]
    sigma: tuple[str, ...]
    initial: tuple[LetterPoly, ...]
    matrix: PdMatrix
    final: tuple[LetterPoly, ...]
    initial_stack: str
    repeated: int = 0

    @classmethod
    def from_transitions(
        cls,
        semiring: Semiring,
        n: int,
        transitions: Iterable[Transition],
        *,
        initial: Mapping[int, Mapping[str, SemiringValue]],
        final: Mapping[int, Mapping[str, SemiringValue]],
        initial_stack: str,
        gamma: Iterable[str] | None = None,
        sigma: Iterable[str] | None = None,
        repeated: int = 0,
    ) -> OmegaPda:
        """Assemble an automaton from transition records.

        Coefficients of repeated records are added. Γ and Σ default to the
        symbols and letters actually used.
        """
        grid: dict[tuple[str, Stack], dict[tuple[int, int], dict[str, SemiringValue]]] = {}
        used_symbols = {initial_stack}
        used_letters: set[str] = set()
        for t in transitions:
            cell = grid.setdefault((t.top, t.replacement), {}).setdefault((t.source, t.target), {})
            cell[t.letter] = semiring.add(cell.get(t.letter, semiring.zero), semiring.coerce(t.weight))
            used_symbols.add(t.top)
            used_symbols.update(t.replacement)
            used_letters.add(t.letter)
        for vector in (initial, final):
            for poly in vector.values():
                used_letters.update(poly)
        used_letters.discard(EPS)

        blocks = []
        for (top, replacement), cells in sorted(grid.items()):
            entries = tuple(
                (i, j, poly)
                for (i, j), coefficients in sorted(cells.items())
                if (poly := LetterPoly.of(semiring, coefficients))
            )
            if entries:
                blocks.append(Block(top, replacement, entries))

        gamma_set = sorted(set(gamma) if gamma is not None else used_symbols)
        sigma_set = sorted(set(sigma) if sigma is not None else used_letters)
        return cls(
            semiring=semiring,
            n=n,
            gamma=tuple(gamma_set),
            sigma=tuple(sigma_set),
            initial=tuple(LetterPoly.of(semiring, initial.get(i, {})) for i in range(1, n + 1)),
            matrix=PdMatrix(n, tuple(gamma_set), tuple(blocks)),
            final=tuple(LetterPoly.of(semiring, final.get(j, {})) for j in range(1, n + 1)),
            initial_stack=initial_stack,
            repeated=repeated,
        )

    @property
    def states(self) -> range:
        return range(1, self.n + 1)

    def is_repeated(self, state: int) -> bool:
        return state <= self.repeated

    def with_repeated(self, repeated: int) -> OmegaPda:
        return dataclasses.replace(self, repeated=repeated)

    def with_semiring(self, semiring: Semiring) -> OmegaPda:
        """Reinterpret every coefficient in ``semiring`` (𝔹 → ℕ^∞ maps 1 to 1)."""
        return OmegaPda.from_transitions(
            semiring,
            self.n,
            self.matrix.transitions(),
            initial={i: dict(poly) for i, poly in zip(self.states, self.initial, strict=True)},
            final={j: dict(poly) for j, poly in zip(self.states, self.final, strict=True)},
            initial_stack=self.initial_stack,
            gamma=self.gamma,
            sigma=self.sigma,
            repeated=self.repeated,
        )

    def counting_view(self) -> OmegaPda:
        """The ℕ^∞ reading used for derivation and run counts."""
        if self.semiring.name == NAT_INF.name:
            return self
        return self.with_semiring(NAT_INF)

    def support(self) -> OmegaPda:
        """The Boolean reading: every nonzero coefficient becomes 1."""
        if self.semiring.name == BOOLEAN.name:
            return self
        return self.with_semiring(BOOLEAN)

    def check_word(self, word: str) -> None:
        """Raise :class:`AlphabetError` if ``word`` has a letter outside Σ."""
        alphabet = set(self.sigma)
        for letter in word:
            if letter not in alphabet:
                raise AlphabetError(f"letter {letter!r} not in sigma {' '.join(self.sigma)}")


@dataclass(frozen=True, order=True)
class Configuration:
    """An instantaneous description (state, stack); the input is carried by the caller."""

    state: int
    stack: Stack

    def __str__(self) -> str:
        return f"({self.state},{format_stack(self.stack)})"


@dataclass(frozen=True)
class RunStep:
    source: Configuration
    letter: str
    block: tuple[str, Stack]
    target: Configuration
    weight: SemiringValue


@dataclass(frozen=True)
class Run:
    """An accepting finite computation, including the initial and final letters."""

    initial: tuple[int, str, SemiringValue]
    steps: tuple[RunStep, ...]
    final: tuple[int, str, SemiringValue]

    @property
    def word(self) -> str:
        return self.initial[1] + "".join(s.letter for s in self.steps) + self.final[1]

    def weight(self, semiring: Semiring) -> SemiringValue:
        return semiring.product(
            [self.initial[2], *(s.weight for s in self.steps), self.final[2]]
        )


def _check_poly(
    pda: OmegaPda, poly: LetterPoly, where: str, violations: list[str]
) -> None:
    allowed = set(pda.sigma) | {EPS}
    for letter, value in poly:
        if letter not in allowed:
            violations.append(f"{where}: letter {letter!r} not in sigma")
        if not pda.semiring.contains(value):
            violations.append(f"{where}: value {value!r} not in {pda.semiring.name} semiring")
        elif pda.semiring.is_zero(value):
            violations.append(f"{where}: stores an explicit zero for {format_letter(letter)}")


def validate_pda(pda: OmegaPda) -> list[str]:
    """Return every violated invariant of ``pda``; an empty list means well-formed."""
    violations: list[str] = []
    if pda.n < 1:
        violations.append("state count must be at least 1")
    if not 0 <= pda.repeated <= max(pda.n, 0):
        violations.append("repeated bound out of range")
    gamma = set(pda.gamma)
    if pda.initial_stack not in gamma:
        violations.append(f"initial stack symbol {pda.initial_stack!r} not in gamma")
    for letter in pda.sigma:
        if len(letter) != 1:
            violations.append(f"sigma letter {letter!r} must be a single character")
    if pda.matrix.n != pda.n:
        violations.append(f"matrix dimension {pda.matrix.n} differs from state count {pda.n}")
    for name, vector in (("I", pda.initial), ("P", pda.final)):
        if len(vector) != pda.n:
            violations.append(f"{name} has {len(vector)} entries, expected {pda.n}")
        for index, poly in enumerate(vector, start=1):
            _check_poly(pda, poly, f"{name}[{index}]", violations)

    seen: set[tuple[str, Stack]] = set()
    for block in pda.matrix.blocks:
        key = (block.top, block.replacement)
        if key in seen:
            violations.append(f"block {block.label}: stored twice")
        seen.add(key)
        if block.top not in gamma:
            violations.append(f"block {block.label}: top symbol {block.top!r} not in gamma")
        for symbol in block.replacement:
            if symbol not in gamma:
                violations.append(f"block {block.label}: symbol {symbol!r} not in gamma")
        if not any(poly for _, _, poly in block.entries):
            violations.append(f"block {block.label}: entirely zero")
        for i, j, poly in block.entries:
            if not (1 <= i <= pda.n and 1 <= j <= pda.n):
                violations.append(f"block {block.label}: entry [{i},{j}] out of range")
            _check_poly(pda, poly, f"block {block.label}[{i},{j}]", violations)
    return violations


def ensure_valid(pda: OmegaPda) -> None:
    violations = validate_pda(pda)
    if violations:
        raise InvalidAutomatonError(violations)


def step(pda: OmegaPda, config: Configuration) -> list[tuple[str, SemiringValue, Configuration]]:
    """All one-step successors of ``config``, sorted by (letter, target)."""
    if not config.stack:
        return []
    rest = config.stack[1:]
    successors = []
    for block in pda.matrix.blocks_for(config.stack[0]):
        for i, j, poly in block.entries:
            if i != config.state:
                continue
            for letter, weight in poly:
                successors.append((letter, weight, Configuration(j, block.replacement + rest)))
    successors.sort(key=lambda s: (s[0], s[2]))
    return successors
