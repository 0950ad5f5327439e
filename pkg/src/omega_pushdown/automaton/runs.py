"""Brute-force run semantics used as oracles.

Everything here works directly on configurations (state, stack) and bounds
either the number of steps or the stack height, so results are exhaustive
only within those bounds. The saturation and grammar engines are checked
against these functions.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterator

from omega_pushdown.algebra.semiring import SemiringValue
from omega_pushdown.automaton.graphs import FlaggedArc, good_nodes, shortest_path
from omega_pushdown.automaton.model import (
    EPS,
    Configuration,
    OmegaPda,
    Run,
    RunStep,
    Stack,
    step,
)
from omega_pushdown.utils import get_logger

logger = get_logger(__name__)

ProfileKey = tuple[int, str, int]
"""(end state, consumed word, number of steps)."""

Node = tuple[int, Stack, int]
"""(state, stack, lasso position)."""
Path = list[tuple[Node, FlaggedArc[Node]]]


def epsilon_pump_free(pda: OmegaPda) -> bool:
    """True when every ε-coefficient sits in a pop block M_{p,ε}.

    Such automata read a letter on every step that does not shrink the stack,
    so every word has finitely many accepting runs.
    """
    return all(t.letter != EPS or not t.replacement for t in pda.matrix.transitions())


def exhaustive_step_bound(pda: OmegaPda, word: str) -> int:
    """Step bound 2·(|w|+1)·K, K the longest replacement (at least 1).

    Exhaustive for :func:`epsilon_pump_free` automata: at most |w| letter
    steps, each growing the stack by at most K-1, plus the pops.
    """
    return 2 * (len(word) + 1) * max(1, pda.matrix.max_replacement)


def _initial_choices(pda: OmegaPda, word: str) -> Iterator[tuple[int, str, SemiringValue]]:
    for state, poly in zip(pda.states, pda.initial, strict=True):
        for letter, weight in poly:
            if word.startswith(letter):
                yield state, letter, weight


def enumerate_accepting_runs(pda: OmegaPda, word: str, max_steps: int) -> list[Run]:
    """All accepting runs spelling ``word`` with at most ``max_steps`` steps.

    A run starts in (i, p₀) with I_i ≠ 0, may consume an initial letter of I_i,
    ends in (j, ε) and may consume a final letter of P_j.
    """
    runs: list[Run] = []
    path: list[RunStep] = []

    def extend(config: Configuration, pos: int, start: tuple[int, str, SemiringValue]) -> None:
        if not config.stack:
            for letter, weight in pda.final[config.state - 1]:
                if word[pos:] == letter:
                    runs.append(Run(start, tuple(path), (config.state, letter, weight)))
            return
        if len(config.stack) > max_steps - len(path):
            return
        for letter, weight, target in step(pda, config):
            if letter and (pos >= len(word) or word[pos] != letter):
                continue
            applied = (config.stack[0], _applied(config, target))
            path.append(RunStep(config, letter, applied, target, weight))
            extend(target, pos + len(letter), start)
            path.pop()

    for state, letter, weight in _initial_choices(pda, word):
        extend(Configuration(state, (pda.initial_stack,)), len(letter), (state, letter, weight))
    return runs


def _applied(source: Configuration, target: Configuration) -> Stack:
    """The replacement π of the block that took ``source`` to ``target``."""
    rest = len(source.stack) - 1
    return target.stack[: len(target.stack) - rest]


def accepts_by_search(pda: OmegaPda, word: str, stack_cap: int) -> bool:
    """Boolean acceptance of ``word`` by breadth-first search over configurations.

    Configurations (state, stack, position) are deduplicated and stacks higher
    than ``stack_cap`` are cut off; exact whenever no accepting run needs a
    higher stack.
    """
    start = [
        (state, (pda.initial_stack,), len(letter))
        for state, letter, _ in _initial_choices(pda, word)
    ]
    seen = set(start)
    queue = deque(start)
    while queue:
        state, stack, pos = queue.popleft()
        if not stack:
            if any(word[pos:] == letter for letter, _ in pda.final[state - 1]):
                return True
            continue
        for letter, _, target in step(pda, Configuration(state, stack)):
            if letter and (pos >= len(word) or word[pos] != letter):
                continue
            if len(target.stack) > stack_cap:
                continue
            node = (target.state, target.stack, pos + len(letter))
            if node not in seen:
                seen.add(node)
                queue.append(node)
    return False


def emptying_targets(pda: OmegaPda, state: int, top: str, max_steps: int) -> frozenset[int]:
    """States j such that (state, top) reaches (j, ε) within ``max_steps`` steps."""
    targets: set[int] = set()
    best: dict[Configuration, int] = {}
    frontier = {Configuration(state, (top,))}
    for taken in range(max_steps):
        budget = max_steps - taken - 1
        layer: set[Configuration] = set()
        for config in frontier:
            for _, _, target in step(pda, config):
                if not target.stack:
                    targets.add(target.state)
                elif len(target.stack) <= budget and best.get(target, -1) < budget:
                    best[target] = budget
                    layer.add(target)
        frontier = layer
        if not frontier:
            break
    return frozenset(targets)


class RunProfiler:
    """Memoised summaries of bounded computations that empty a stack.

    ``profile(i, π)`` maps (j, w, s) to the summed weight of all computations
    from (i, π) to (j, ε) reading w (|w| ≤ max_len) in exactly s ≤ max_steps
    steps.
    """

    def __init__(self, pda: OmegaPda, max_len: int, max_steps: int) -> None:
        self.pda = pda
        self.max_len = max_len
        self.max_steps = max_steps
        self._memo: dict[tuple[int, Stack, int], dict[ProfileKey, SemiringValue]] = {}

    def profile(self, state: int, stack: Stack) -> dict[ProfileKey, SemiringValue]:
        return self._profile(state, stack, self.max_steps)

    def _profile(self, state: int, stack: Stack, budget: int) -> dict[ProfileKey, SemiringValue]:
        sr = self.pda.semiring
        if not stack:
            return {(state, EPS, 0): sr.one}
        if len(stack) > budget:
            return {}
        key = (state, stack, budget)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        out: dict[ProfileKey, SemiringValue] = {}
        for letter, weight, target in step(self.pda, Configuration(state, stack)):
            for (end, word, steps), value in self._profile(
                target.state, target.stack, budget - 1
            ).items():
                extended = letter + word
                if len(extended) > self.max_len:
                    continue
                slot = (end, extended, steps + 1)
                out[slot] = sr.add(out.get(slot, sr.zero), sr.mul(weight, value))
        self._memo[key] = out
        return out


def enumerate_omega_run_prefixes(
    pda: OmegaPda, u: str, v: str, stack_cap: int, min_repeats: int = 1
) -> bool:
    """Bounded, one-sided oracle for Büchi acceptance of u·v^ω.

    Explores the configuration graph with stack height ≤ ``stack_cap``,
    synchronised with positions of the lasso. Two witnesses count, each
    reading a letter and visiting a repeated state on every turn:

    - a reachable cycle of configurations;
    - a pumping segment (i, p·ρ, pos) ⇒ (i, p·σ·ρ, pos) that never exposes ρ,
      which repeats forever on the growing stack p·σᵏ·ρ.

    The witness run prefix (prefix plus ``min_repeats`` turns) must replay
    through :func:`step`. False is inconclusive.
    """
    if not v:
        raise ValueError("lasso period v must be nonempty")
    if stack_cap < 1:
        raise ValueError("stack_cap must be at least 1")
    if pda.repeated == 0:
        return False
    stream, loop_start = u + v, len(u)

    def next_pos(pos: int) -> int:
        return pos + 1 if pos + 1 < len(stream) else loop_start

    starts: list[Node] = []
    for state, poly in zip(pda.states, pda.initial, strict=True):
        for letter, _ in poly:
            if letter == EPS:
                starts.append((state, (pda.initial_stack,), 0))
            elif stream[0] == letter:
                starts.append((state, (pda.initial_stack,), next_pos(0)))

    graph = _lasso_graph(pda, stream, next_pos, starts, stack_cap)
    kind = "cycle"
    path: Path | None = None
    good = good_nodes(dict.fromkeys(starts), graph)
    witness = _lasso_witness(starts, good, graph, pda) if good else None
    if witness is not None:
        prefix, cycle = witness
        path = prefix + cycle * max(1, min_repeats)
    else:
        kind = "pumping"
        path = _pumping_witness(pda, stream, next_pos, starts, graph, stack_cap, min_repeats)
    if path is None:
        return False
    replayed = _replays(pda, stream, next_pos, path)
    logger.debug("omega_prefix_witness", kind=kind, steps=len(path), replayed=replayed)
    return replayed


def _lasso_graph(
    pda: OmegaPda,
    stream: str,
    next_pos: Callable[[int], int],
    starts: list[Node],
    stack_cap: int,
    floor: int = 0,
) -> dict[Node, list[FlaggedArc[Node]]]:
    """Configurations reachable from ``starts`` with floor < stack height ≤ ``stack_cap``."""
    graph: dict[Node, list[FlaggedArc[Node]]] = {}
    queue = deque(dict.fromkeys(starts))
    seen = set(queue)
    while queue:
        node = queue.popleft()
        state, stack, pos = node
        arcs = graph.setdefault(node, [])
        for letter, _, target in step(pda, Configuration(state, stack)):
            if len(target.stack) <= floor or len(target.stack) > stack_cap:
                continue
            if letter and stream[pos] != letter:
                continue
            succ = (target.state, target.stack, next_pos(pos) if letter else pos)
            arcs.append(FlaggedArc(succ, pda.is_repeated(state), bool(letter)))
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return graph


def _lasso_witness(
    starts: list[Node],
    good: set[Node],
    graph: dict[Node, list[FlaggedArc[Node]]],
    pda: OmegaPda,
) -> tuple[Path, Path] | None:
    """A path to a repeated node of a good component and a consuming cycle through it."""
    for anchor in sorted(node for node in good if pda.is_repeated(node[0])):
        prefix = next(
            (p for start in starts if (p := shortest_path(start, anchor, graph)) is not None),
            None,
        )
        if prefix is None:
            continue
        for source in sorted(good):
            for arc in graph[source]:
                if not arc.consumes or arc.target not in good:
                    continue
                there = shortest_path(anchor, source, graph, within=good)
                back = shortest_path(arc.target, anchor, graph, within=good)
                if there is not None and back is not None:
                    return prefix, [*there, (source, arc), *back]
    return None


def _pumping_segment(
    graph: dict[Node, list[FlaggedArc[Node]]], anchor: Node
) -> Path | None:
    """Shortest flagged path from ``anchor`` = (i, p, pos) to some (i, p·σ, pos).

    ``graph`` holds relative stacks that never drop below one symbol, so the
    segment only ever sees the anchor's top symbol.
    """
    state, stack, pos = anchor
    Item = tuple[Node, bool, bool]
    start: Item = (anchor, False, False)
    parent: dict[Item, tuple[Item, FlaggedArc[Node]] | None] = {start: None}
    queue = deque([start])
    while queue:
        item = queue.popleft()
        node, repeated, consumes = item
        for arc in graph.get(node, ()):
            succ: Item = (arc.target, repeated or arc.repeated, consumes or arc.consumes)
            if succ in parent:
                continue
            parent[succ] = (item, arc)
            target_state, target_stack, target_pos = arc.target
            if (
                succ[1]
                and succ[2]
                and (target_state, target_stack[0], target_pos) == (state, stack[0], pos)
            ):
                path: Path = []
                cursor: Item = succ
                while (link := parent[cursor]) is not None:
                    previous, via = link
                    path.append((previous[0], via))
                    cursor = previous
                return path[::-1]
            queue.append(succ)
    return None


def _lift(path: Path, below: Stack) -> Path:
    def lifted(node: Node) -> Node:
        state, stack, pos = node
        return state, stack + below, pos

    return [
        (lifted(node), FlaggedArc(lifted(arc.target), arc.repeated, arc.consumes))
        for node, arc in path
    ]


def _pumping_witness(
    pda: OmegaPda,
    stream: str,
    next_pos: Callable[[int], int],
    starts: list[Node],
    graph: dict[Node, list[FlaggedArc[Node]]],
    stack_cap: int,
    min_repeats: int,
) -> Path | None:
    """A reachable pumping segment, unrolled ``min_repeats`` times on its own growth."""
    segments: dict[tuple[int, str, int], Path | None] = {}
    for node in sorted(graph):
        state, stack, pos = node
        key = (state, stack[0], pos)
        if key not in segments:
            anchor = (state, stack[:1], pos)
            relative = _lasso_graph(pda, stream, next_pos, [anchor], stack_cap)
            segments[key] = _pumping_segment(relative, anchor)
        segment = segments[key]
        if segment is None:
            continue
        prefix = next(
            (p for start in starts if (p := shortest_path(start, node, graph)) is not None),
            None,
        )
        if prefix is None:
            continue
        growth = segment[-1][1].target[1][1:]
        rho = stack[1:]
        path = list(prefix)
        for turn in range(max(1, min_repeats)):
            path.extend(_lift(segment, growth * turn + rho))
        return path
    return None


def _replays(pda: OmegaPda, stream: str, next_pos: Callable[[int], int], path: Path) -> bool:
    """Check every arc of ``path`` against :func:`step` and the lasso stream."""
    for (state, stack, pos), arc in path:
        target_state, target_stack, target_pos = arc.target
        for letter, _, target in step(pda, Configuration(state, stack)):
            if (target.state, target.stack) != (target_state, target_stack):
                continue
            if letter == EPS and target_pos == pos:
                break
            if letter and stream[pos] == letter and target_pos == next_pos(pos):
                break
        else:
            return False
    return True
