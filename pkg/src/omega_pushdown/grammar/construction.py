"""Triple-pair construction of the mixed context-free grammar G_l.

X-variables (x₀ and triples [i,p,j]) generate the finite behaviour: [i,p,j]
derives the words read while the automaton goes from state i with p on top
to state j with p removed. Z-variables (z₀ and pairs [i,p]) generate infinite
computations: [i,p] rewrites along the A_M edge that never pops p.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

from jinja2 import Environment, StrictUndefined

from omega_pushdown.algebra.semiring import Semiring, SemiringValue
from omega_pushdown.automaton.graphs import FlaggedArc, backward_closure, good_nodes
from omega_pushdown.automaton.model import EPS, OmegaPda, ensure_valid
from omega_pushdown.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class StartX:
    def __str__(self) -> str:
        return "x0"


@dataclass(frozen=True)
class StartZ:
    def __str__(self) -> str:
        return "z0"


@dataclass(frozen=True)
class Triple:
    i: int
    p: str
    j: int

    def __str__(self) -> str:
        return f"[{self.i},{self.p},{self.j}]"


@dataclass(frozen=True)
class Pair:
    i: int
    p: str

    def __str__(self) -> str:
        return f"[{self.i},{self.p}]"


Var = StartX | Triple | StartZ | Pair
Symbol = str | Var

X0 = StartX()
Z0 = StartZ()


def var_key(var: Var) -> tuple[int, int, str, int]:
    match var:
        case StartX():
            return (0, 0, "", 0)
        case Triple(i, p, j):
            return (1, i, p, j)
        case StartZ():
            return (2, 0, "", 0)
        case Pair(i, p):
            return (3, i, p, 0)
    raise TypeError(f"not a grammar variable: {var!r}")


def symbol_key(symbol: Symbol) -> tuple[int, tuple[int, int, str, int] | str]:
    if isinstance(symbol, str):
        return (0, symbol)
    return (1, var_key(symbol))


def is_x_variable(var: Var) -> bool:
    return isinstance(var, StartX | Triple)


class ProductionKind(StrEnum):
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Production:
    """lhs → rhs; ε never appears in ``rhs`` and the empty rhs stands for ε."""

    lhs: Var
    rhs: tuple[Symbol, ...]
    kind: ProductionKind
    weight: SemiringValue = True

    @property
    def terminal(self) -> str:
        """The leading terminal, or ε."""
        return self.rhs[0] if self.rhs and isinstance(self.rhs[0], str) else EPS

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(s for s in self.rhs if not isinstance(s, str))

    def sort_key(self) -> tuple[object, ...]:
        return (var_key(self.lhs), self.terminal, tuple(symbol_key(s) for s in self.rhs))

    def __str__(self) -> str:
        body = " ".join(str(s) for s in self.rhs) if self.rhs else "eps"
        return f"{self.lhs} -> {body}"


@dataclass(frozen=True)
class MixedGrammar:
    """G_l = (X, Z, Σ, P_X, P_Z, x₀, z₀, l); pairs [i,p] with i ≤ l are repeated."""

    semiring: Semiring
    n: int
    gamma: tuple[str, ...]
    sigma: tuple[str, ...]
    initial_stack: str
    repeated: int
    productions_x: tuple[Production, ...]
    productions_z: tuple[Production, ...]

    @property
    def productions(self) -> tuple[Production, ...]:
        return self.productions_x + self.productions_z

    @property
    def x_variables(self) -> tuple[Var, ...]:
        triples = (
            Triple(i, p, j)
            for i in range(1, self.n + 1)
            for p in self.gamma
            for j in range(1, self.n + 1)
        )
        return (X0, *triples)

    @property
    def z_variables(self) -> tuple[Var, ...]:
        pairs = (Pair(i, p) for i in range(1, self.n + 1) for p in self.gamma)
        return (Z0, *pairs)

    @property
    def repeated_z(self) -> tuple[Pair, ...]:
        return tuple(Pair(i, p) for i in range(1, self.repeated + 1) for p in self.gamma)

    @cached_property
    def by_lhs(self) -> dict[Var, tuple[Production, ...]]:
        index: dict[Var, list[Production]] = {}
        for production in self.productions:
            index.setdefault(production.lhs, []).append(production)
        return {lhs: tuple(prods) for lhs, prods in index.items()}

    def rules(self, var: Var) -> tuple[Production, ...]:
        return self.by_lhs.get(var, ())


def _optional(letter: str) -> tuple[str, ...]:
    return (letter,) if letter else ()


def _merge(
    semiring: Semiring, productions: Iterable[Production]
) -> tuple[Production, ...]:
    """Collapse equal (lhs, rhs) pairs, adding weights, and sort."""
    merged: dict[tuple[Var, tuple[Symbol, ...]], Production] = {}
    for prod in productions:
        key = (prod.lhs, prod.rhs)
        if key in merged:
            old = merged[key]
            prod = dataclasses.replace(old, weight=semiring.add(old.weight, prod.weight))
        merged[key] = prod
    return tuple(sorted(merged.values(), key=Production.sort_key))


def _finite_productions(pda: OmegaPda) -> Iterator[Production]:
    sr = pda.semiring
    p0 = pda.initial_stack
    for m1, start in zip(pda.states, pda.initial, strict=True):
        for m2, end in zip(pda.states, pda.final, strict=True):
            for a1, w1 in start:
                for a2, w2 in end:
                    rhs = (*_optional(a1), Triple(m1, p0, m2), *_optional(a2))
                    yield Production(X0, rhs, ProductionKind.FINITE, sr.mul(w1, w2))
    for t in pda.matrix.transitions():
        k = len(t.replacement)
        for tail in itertools.product(pda.states, repeat=k):
            chain = (t.target, *tail)
            if k == 0:
                lhs = Triple(t.source, t.top, t.target)
            else:
                lhs = Triple(t.source, t.top, chain[-1])
            body = tuple(Triple(chain[x], t.replacement[x], chain[x + 1]) for x in range(k))
            yield Production(lhs, (*_optional(t.letter), *body), ProductionKind.FINITE, t.weight)


def _infinite_productions(pda: OmegaPda) -> Iterator[Production]:
    for m, start in zip(pda.states, pda.initial, strict=True):
        for a, w in start:
            rhs = (*_optional(a), Pair(m, pda.initial_stack))
            yield Production(Z0, rhs, ProductionKind.INFINITE, w)
    for t in pda.matrix.transitions():
        for j in range(1, len(t.replacement) + 1):
            for tail in itertools.product(pda.states, repeat=j - 1):
                chain = (t.target, *tail)
                body = tuple(
                    Triple(chain[x], t.replacement[x], chain[x + 1]) for x in range(j - 1)
                )
                rhs = (*_optional(t.letter), *body, Pair(chain[-1], t.replacement[j - 1]))
                yield Production(Pair(t.source, t.top), rhs, ProductionKind.INFINITE, t.weight)


def triple_pair_construct(pda: OmegaPda) -> MixedGrammar:
    """Build G_l from an ω-pushdown automaton."""
    ensure_valid(pda)
    grammar = MixedGrammar(
        semiring=pda.semiring,
        n=pda.n,
        gamma=pda.gamma,
        sigma=pda.sigma,
        initial_stack=pda.initial_stack,
        repeated=pda.repeated,
        productions_x=_merge(pda.semiring, _finite_productions(pda)),
        productions_z=_merge(pda.semiring, _infinite_productions(pda)),
    )
    logger.debug(
        "grammar_constructed",
        productions_x=len(grammar.productions_x),
        productions_z=len(grammar.productions_z),
    )
    return grammar


def productive_variables(grammar: MixedGrammar) -> frozenset[Var]:
    """X-variables that derive at least one terminal word."""
    productive: set[Var] = set()
    changed = True
    while changed:
        changed = False
        for prod in grammar.productions_x:
            if prod.lhs not in productive and all(v in productive for v in prod.variables):
                productive.add(prod.lhs)
                changed = True
    return frozenset(productive)


def productive_triples(grammar: MixedGrammar) -> frozenset[Triple]:
    return frozenset(v for v in productive_variables(grammar) if isinstance(v, Triple))


def trim_grammar(grammar: MixedGrammar) -> MixedGrammar:
    """Drop useless variables without changing L(G_l).

    X-variables must be productive and reachable from x₀ or from a kept
    Z-production. Z-variables must be reachable from z₀ and able to reach a
    cycle of pair variables; with l = 0 no infinite derivation qualifies, so
    P_Z is emptied.
    """
    productive = productive_variables(grammar)
    useful_x = [p for p in grammar.productions_x if all(v in productive for v in p.variables)]

    kept_z: list[Production] = []
    if grammar.repeated > 0:
        candidates = [
            p
            for p in grammar.productions_z
            if all(v in productive for v in p.variables if isinstance(v, Triple))
        ]
        graph: dict[Var, list[FlaggedArc[Var]]] = {}
        for prod in candidates:
            graph.setdefault(prod.lhs, []).append(FlaggedArc(prod.variables[-1], True, True))
            graph.setdefault(prod.variables[-1], [])
        live = backward_closure(good_nodes(sorted(graph, key=var_key), graph), graph)
        reachable = _reachable([Z0], candidates)
        kept_z = [
            p
            for p in candidates
            if p.lhs in live and p.lhs in reachable and p.variables[-1] in live
        ]

    roots: list[Var] = [X0]
    roots.extend(v for p in kept_z for v in p.variables if isinstance(v, Triple))
    reachable_x = _reachable(roots, useful_x)
    trimmed = dataclasses.replace(
        grammar,
        productions_x=tuple(p for p in useful_x if p.lhs in reachable_x),
        productions_z=tuple(kept_z),
    )
    logger.debug(
        "grammar_trimmed",
        productions_x=len(trimmed.productions_x),
        productions_z=len(trimmed.productions_z),
    )
    return trimmed


def _reachable(roots: Iterable[Var], productions: Iterable[Production]) -> set[Var]:
    by_lhs: dict[Var, list[Production]] = {}
    for prod in productions:
        by_lhs.setdefault(prod.lhs, []).append(prod)
    seen = set(roots)
    stack = list(seen)
    while stack:
        var = stack.pop()
        for prod in by_lhs.get(var, ()):
            for v in prod.variables:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return seen


GRAMMAR_TEMPLATE = """\
#semiring {{ semiring }}
#l {{ repeated }}
#repeated-z{% for var in repeated_z %} {{ var }}{% endfor %}
{% for line in lines %}{{ line }}
{% endfor %}"""

_environment = Environment(undefined=StrictUndefined, autoescape=False)


def render_grammar(grammar: MixedGrammar) -> str:
    """Grammar emission format: header lines, then one production per line.

    A weight other than 1 is appended as a trailing ``# w`` comment.
    """
    sr = grammar.semiring
    lines = []
    for prod in grammar.productions:
        line = str(prod)
        if prod.weight != sr.one:
            line += f"  # {sr.format(prod.weight)}"
        lines.append(line)
    return _environment.from_string(GRAMMAR_TEMPLATE).render(
        semiring=sr.name.value,
        repeated=grammar.repeated,
        repeated_z=grammar.repeated_z,
        lines=lines,
    )
