"""Graph search for Büchi-style acceptance on finite flagged graphs.

Edges carry two flags: ``repeated`` (the edge passes a repeated state) and
``consumes`` (the edge reads an input letter). A strongly connected component
is *good* when its internal edges include one of each kind; since a cycle
through the component can alternate between such edges, any node that reaches
a good component starts an infinite path that reads infinitely many letters
and passes repeated states infinitely often.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass
from typing import Generic, TypeVar

N = TypeVar("N", bound=Hashable)


@dataclass(frozen=True)
class FlaggedArc(Generic[N]):
    target: N
    repeated: bool
    consumes: bool


Graph = Mapping[N, list[FlaggedArc[N]]]


def strongly_connected_components(
    roots: Iterable[N], graph: Mapping[N, list[FlaggedArc[N]]]
) -> list[list[N]]:
    """Components reachable from ``roots``, in reverse topological order.

    Nonrecursive Tarjan with Nuutila's modification.
    """
    preorder: dict[N, int] = {}
    lowlink: dict[N, int] = {}
    found: set[N] = set()
    scc_queue: list[N] = []
    components: list[list[N]] = []
    counter = 0
    for source in roots:
        if source in found:
            continue
        queue = [source]
        while queue:
            v = queue[-1]
            if v not in preorder:
                counter += 1
                preorder[v] = counter
            done = True
            successors = [arc.target for arc in graph.get(v, ())]
            for w in successors:
                if w not in preorder:
                    queue.append(w)
                    done = False
                    break
            if not done:
                continue
            lowlink[v] = preorder[v]
            for w in successors:
                if w not in found:
                    if preorder[w] > preorder[v]:
                        lowlink[v] = min(lowlink[v], lowlink[w])
                    else:
                        lowlink[v] = min(lowlink[v], preorder[w])
            queue.pop()
            if lowlink[v] == preorder[v]:
                found.add(v)
                component = [v]
                while scc_queue and preorder[scc_queue[-1]] > preorder[v]:
                    k = scc_queue.pop()
                    found.add(k)
                    component.append(k)
                components.append(component)
            else:
                scc_queue.append(v)
    return components


def good_nodes(roots: Iterable[N], graph: Mapping[N, list[FlaggedArc[N]]]) -> set[N]:
    """Nodes reachable from ``roots`` that lie in a good component."""
    components = strongly_connected_components(roots, graph)
    component_of = {node: index for index, members in enumerate(components) for node in members}
    has_repeated: set[int] = set()
    has_consuming: set[int] = set()
    for source, index in component_of.items():
        for arc in graph.get(source, ()):
            if component_of.get(arc.target) != index:
                continue
            if arc.repeated:
                has_repeated.add(index)
            if arc.consumes:
                has_consuming.add(index)
    good = has_repeated & has_consuming
    return {node for node, index in component_of.items() if index in good}


def backward_closure(targets: Iterable[N], graph: Mapping[N, list[FlaggedArc[N]]]) -> set[N]:
    """All nodes with a path (possibly empty) into ``targets``."""
    reverse: dict[N, list[N]] = {}
    for source, arcs in graph.items():
        for arc in arcs:
            reverse.setdefault(arc.target, []).append(source)
    seen = set(targets)
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for pred in reverse.get(node, ()):
            if pred not in seen:
                seen.add(pred)
                queue.append(pred)
    return seen


def shortest_path(
    start: N, goal: N, graph: Mapping[N, list[FlaggedArc[N]]], within: set[N] | None = None
) -> list[tuple[N, FlaggedArc[N]]] | None:
    """Breadth-first path from ``start`` to ``goal`` as (source, arc) pairs."""
    if start == goal:
        return []
    parent: dict[N, tuple[N, FlaggedArc[N]]] = {}
    queue = deque([start])
    seen = {start}
    while queue:
        node = queue.popleft()
        for arc in graph.get(node, ()):
            if arc.target in seen or (within is not None and arc.target not in within):
                continue
            seen.add(arc.target)
            parent[arc.target] = (node, arc)
            if arc.target == goal:
                path = []
                current = goal
                while current != start:
                    source, via = parent[current]
                    path.append((source, via))
                    current = source
                return path[::-1]
            queue.append(arc.target)
    return None
