"""Saturation engine for star blocks, A_M edges and Büchi pairs.

``star_triples`` computes the support of the star blocks (M*)_{p,ε} as the
least solution of x_p = Σ_π M_{p,π} x_{p₁}…x_{p_k}, in pre*-style worklist
form. Each triple (i, p, j) carries two witness flags: ``via_repeated`` (some
emptying computation visits a state ≤ l, endpoints included) and ``consumes``
(some emptying computation reads a letter).

``a_m_edges`` composes one block with star segments into the edges of A_M,
and ``omega_pairs`` finds the pairs (i, p) from which an infinite computation
visits repeated states infinitely often while reading infinitely many letters.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import NamedTuple

from omega_pushdown.algebra.semiring import SemiringValue
from omega_pushdown.automaton.graphs import FlaggedArc, backward_closure, good_nodes
from omega_pushdown.automaton.model import EPS, OmegaPda, Stack, Transition
from omega_pushdown.automaton.runs import RunProfiler
from omega_pushdown.utils import get_logger

logger = get_logger(__name__)

TripleKey = tuple[int, str, int]
Pair = tuple[int, str]


class Flags(NamedTuple):
    repeated: bool
    consumes: bool

    def __or__(self, other: object) -> Flags:
        if not isinstance(other, Flags):
            return NotImplemented
        return Flags(self.repeated or other.repeated, self.consumes or other.consumes)


@dataclass(frozen=True, order=True)
class FlaggedTriple:
    i: int
    p: str
    j: int
    via_repeated: bool = False
    consumes: bool = False
    reach: bool = True

    @property
    def key(self) -> TripleKey:
        return (self.i, self.p, self.j)

    @property
    def flags(self) -> Flags:
        return Flags(self.via_repeated, self.consumes)


@dataclass(frozen=True, order=True)
class FlaggedEdge:
    source: Pair
    target: Pair
    via_repeated: bool = False
    consumes: bool = False
    reach: bool = True


TripleIndex = dict[Pair, dict[int, Flags]]


def index_triples(triples: Iterable[FlaggedTriple]) -> TripleIndex:
    """Index triples by (i, p) for chaining."""
    index: TripleIndex = {}
    for t in triples:
        index.setdefault((t.i, t.p), {})[t.j] = t.flags
    return index


def _entry_flags(pda: OmegaPda, t: Transition) -> Flags:
    return Flags(pda.is_repeated(t.source) or pda.is_repeated(t.target), t.letter != EPS)


def _chain(index: TripleIndex, start: Mapping[int, Flags], symbols: Stack) -> dict[int, Flags]:
    """Advance a set of (state, flags) through star segments over ``symbols``."""
    frontier = dict(start)
    for symbol in symbols:
        advanced: dict[int, Flags] = {}
        for m, flags in frontier.items():
            for j, segment in index.get((m, symbol), {}).items():
                merged = flags | segment
                advanced[j] = advanced[j] | merged if j in advanced else merged
        frontier = advanced
        if not frontier:
            break
    return frontier


def _as_set(known: Mapping[TripleKey, Flags]) -> frozenset[FlaggedTriple]:
    return frozenset(
        FlaggedTriple(i, p, j, flags.repeated, flags.consumes) for (i, p, j), flags in known.items()
    )


def saturation_round(pda: OmegaPda, triples: Iterable[FlaggedTriple]) -> frozenset[FlaggedTriple]:
    """Immediate consequences of ``triples`` under the star equations, flags included.

    ``triples`` is a fixpoint exactly when the result equals it.
    """
    index = index_triples(triples)
    derived: dict[TripleKey, Flags] = {}
    for t in pda.matrix.transitions():
        ends = _chain(index, {t.target: _entry_flags(pda, t)}, t.replacement)
        for j, flags in ends.items():
            key = (t.source, t.top, j)
            derived[key] = derived[key] | flags if key in derived else flags
    return _as_set(derived)


def star_triples(pda: OmegaPda) -> frozenset[FlaggedTriple]:
    """Least solution of the star equations over 𝔹 with witness flags, by worklist saturation.

    Over ℕ^∞ the Boolean support is computed.
    """
    # An item is a block entry from (i, top) that has emptied the first
    # ``done`` replacement symbols and currently sits in state m.
    Item = tuple[int, str, Stack, int, int, Flags]
    known: dict[TripleKey, Flags] = {}
    index: TripleIndex = {}
    waiting: dict[Pair, list[Item]] = {}
    seen: set[Item] = set()
    agenda: deque[Item] = deque()

    def push(item: Item) -> None:
        if item not in seen:
            seen.add(item)
            agenda.append(item)

    for t in pda.matrix.transitions():
        push((t.source, t.top, t.replacement, 0, t.target, _entry_flags(pda, t)))

    while agenda:
        i, top, replacement, done, m, flags = agenda.popleft()
        if done == len(replacement):
            key = (i, top, m)
            old = known.get(key)
            new = flags if old is None else old | flags
            if new == old:
                continue
            known[key] = new
            index.setdefault((i, top), {})[m] = new
            for w_i, w_top, w_repl, w_done, _, w_flags in waiting.get((i, top), ()):
                push((w_i, w_top, w_repl, w_done + 1, m, w_flags | new))
            continue
        symbol = replacement[done]
        waiting.setdefault((m, symbol), []).append((i, top, replacement, done, m, flags))
        for j, segment in index.get((m, symbol), {}).items():
            push((i, top, replacement, done + 1, j, flags | segment))

    logger.debug("saturation_done", triples=len(known), items=len(seen))
    return _as_set(known)


def reach_set(triples: Iterable[FlaggedTriple]) -> frozenset[TripleKey]:
    return frozenset(t.key for t in triples if t.reach)


def a_m_edges(pda: OmegaPda, triples: Iterable[FlaggedTriple]) -> frozenset[FlaggedEdge]:
    """Edges (i,p) → (m,p_j) of A_M: one block M_{p,p₁…p_k} then star segments over p₁…p_{j-1}."""
    index = index_triples(triples)
    edges: dict[tuple[Pair, Pair], Flags] = {}
    for t in pda.matrix.transitions():
        frontier = {t.target: _entry_flags(pda, t)}
        for position, symbol in enumerate(t.replacement):
            for m, flags in frontier.items():
                key = ((t.source, t.top), (m, symbol))
                edges[key] = edges[key] | flags if key in edges else flags
            if position + 1 < len(t.replacement):
                frontier = _chain(index, frontier, (symbol,))
    return frozenset(
        FlaggedEdge(source, target, flags.repeated, flags.consumes)
        for (source, target), flags in edges.items()
    )


def edge_graph(edges: Iterable[FlaggedEdge]) -> dict[Pair, list[FlaggedArc[Pair]]]:
    graph: dict[Pair, list[FlaggedArc[Pair]]] = {}
    for edge in sorted(edges):
        graph.setdefault(edge.source, []).append(
            FlaggedArc(edge.target, edge.via_repeated, edge.consumes)
        )
        graph.setdefault(edge.target, [])
    return graph


def omega_pairs(
    pda: OmegaPda,
    triples: Iterable[FlaggedTriple] | None = None,
    edges: Iterable[FlaggedEdge] | None = None,
) -> frozenset[Pair]:
    """Pairs (i, p) with ((M^{ω,l})_p)_i ≠ 0 over 𝔹.

    A pair qualifies when it reaches, in the A_M edge graph, a strongly
    connected component containing both a via_repeated edge and a consuming
    edge.
    """
    if pda.repeated == 0:
        return frozenset()
    if edges is None:
        edges = a_m_edges(pda, star_triples(pda) if triples is None else triples)
    graph = edge_graph(edges)
    good = good_nodes(sorted(graph), graph)
    pairs = frozenset(backward_closure(good, graph))
    logger.debug("omega_pairs_done", nodes=len(graph), good=len(good), pairs=len(pairs))
    return pairs


def a_m_step(edges: Iterable[FlaggedEdge], pairs: Iterable[Pair]) -> frozenset[Pair]:
    """Boolean reading of z = A_M z: sources of reach-edges into ``pairs``."""
    targets = set(pairs)
    return frozenset(e.source for e in edges if e.reach and e.target in targets)


def check_factorization(
    pda: OmegaPda,
    p: str,
    pi: Stack,
    max_len: int,
    max_steps: int = 8,
    profiler: RunProfiler | None = None,
) -> bool:
    """Check (M*)_{pπ,ε} = (M*)_{p,ε}(M*)_{π,ε} on words of length ≤ ``max_len``.

    Both sides are summed from bounded computations under one step budget: a
    computation emptying pπ splits uniquely where p is first removed, so
    counting the left side with s steps and the right side with s₁ + s₂ ≤ s
    steps compares the same computations at every truncation level.
    """
    sr = pda.semiring
    if profiler is None:
        profiler = RunProfiler(pda, max_len, max_steps)
    lhs: dict[tuple[int, int, str], SemiringValue] = {}
    rhs: dict[tuple[int, int, str], SemiringValue] = {}
    for i in pda.states:
        for (j, word, _), value in profiler.profile(i, (p, *pi)).items():
            key = (i, j, word)
            lhs[key] = sr.add(lhs.get(key, sr.zero), value)
        for (m, left, s1), a in profiler.profile(i, (p,)).items():
            for (j, right, s2), b in profiler.profile(m, pi).items():
                if s1 + s2 > max_steps or len(left) + len(right) > max_len:
                    continue
                key = (i, j, left + right)
                rhs[key] = sr.add(rhs.get(key, sr.zero), sr.mul(a, b))
    lhs = {k: v for k, v in lhs.items() if not sr.is_zero(v)}
    rhs = {k: v for k, v in rhs.items() if not sr.is_zero(v)}
    if lhs != rhs:
        logger.info(
            "factorization_mismatch",
            p=p,
            pi="".join(pi),
            only_lhs=sorted(set(lhs) - set(rhs))[:5],
            only_rhs=sorted(set(rhs) - set(lhs))[:5],
        )
        return False
    return True
