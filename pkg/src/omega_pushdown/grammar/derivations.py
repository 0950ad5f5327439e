"""Queries over a mixed grammar: derivations, word weights and ambiguity."""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from omega_pushdown.algebra.semiring import INF, NAT_INF, Semiring, SemiringValue
from omega_pushdown.automaton.lasso import LassoWord, lasso_normalize, product_pda
from omega_pushdown.automaton.model import AlphabetError, OmegaPda
from omega_pushdown.automaton.reachability import omega_pairs
from omega_pushdown.grammar.construction import (
    X0,
    Z0,
    MixedGrammar,
    Pair,
    Production,
    Symbol,
    Triple,
    Var,
    productive_variables,
)
from omega_pushdown.utils import get_logger

logger = get_logger(__name__)

Span = tuple[int, int]


def derive_finite(grammar: MixedGrammar, max_len: int, max_steps: int) -> Counter[str]:
    """Words with a leftmost derivation x₀ ⇒* w, counted by derivation.

    Only derivations of at most ``max_steps`` rewrites producing at most
    ``max_len`` letters are explored; each found derivation adds one.
    """
    if max_len < 0 or max_steps < 0:
        raise ValueError("bounds must be non-negative")
    productive = productive_variables(grammar)
    words: Counter[str] = Counter()
    if X0 not in productive:
        return words

    def expand(form: tuple[Symbol, ...], letters: int, pending: int, steps: int) -> None:
        index = next((k for k, s in enumerate(form) if not isinstance(s, str)), None)
        if index is None:
            words["".join(s for s in form if isinstance(s, str))] += 1
            return
        var = form[index]
        assert not isinstance(var, str)
        for prod in grammar.rules(var):
            produced = prod.variables
            if any(v not in productive for v in produced):
                continue
            added = len(prod.rhs) - len(produced)
            remaining = pending - 1 + len(produced)
            # Every pending variable needs at least one more rewrite.
            if letters + added > max_len or steps + 1 + remaining > max_steps:
                continue
            expand(form[:index] + prod.rhs + form[index + 1 :], letters + added, remaining, steps + 1)

    expand((X0,), 0, 1, 0)
    return words


class SpanChart:
    """Weights of every Triple variable over every span of ``word``.

    Spans are solved shortest first. Inside one span the only cyclic
    dependencies run through ε-productions and chain rules, so each span is a
    small fixpoint system; unknowns that keep growing after the acyclic
    settling time are divergent and set to ∞.
    """

    def __init__(
        self,
        grammar: MixedGrammar,
        word: str,
        semiring: Semiring,
        weigh: Callable[[Production], SemiringValue],
    ) -> None:
        self.word = word
        self.semiring = semiring
        self._rules: dict[Triple, list[tuple[str, tuple[Triple, ...], SemiringValue]]] = {}
        for prod in grammar.productions_x:
            if isinstance(prod.lhs, Triple):
                children = tuple(v for v in prod.variables if isinstance(v, Triple))
                self._rules.setdefault(prod.lhs, []).append((prod.terminal, children, weigh(prod)))
        self._unknowns = sorted(self._rules, key=lambda t: (t.i, t.p, t.j))
        self._table: dict[tuple[Triple, int, int], SemiringValue] = {}
        self.diverged: set[tuple[Triple, int, int]] = set()
        for length in range(len(word) + 1):
            for start in range(len(word) - length + 1):
                self._solve((start, start + length))

    def value(self, var: Triple, start: int, end: int) -> SemiringValue:
        return self._table.get((var, start, end), self.semiring.zero)

    def sequence(self, children: tuple[Triple, ...], start: int, end: int) -> SemiringValue:
        """Weight of the concatenation ``children`` deriving word[start:end]."""
        return self._sequence(children, start, end, None, {})

    def _sequence(
        self,
        children: tuple[Triple, ...],
        start: int,
        end: int,
        span: Span | None,
        current: dict[Triple, SemiringValue],
    ) -> SemiringValue:
        sr = self.semiring

        def lookup(var: Triple, a: int, b: int) -> SemiringValue:
            if (a, b) == span:
                return current.get(var, sr.zero)
            return self.value(var, a, b)

        if not children:
            return sr.one if start == end else sr.zero
        if len(children) == 1:
            return lookup(children[0], start, end)
        total = sr.zero
        for split in range(start, end + 1):
            head = lookup(children[0], start, split)
            if sr.is_zero(head):
                continue
            tail = self._sequence(children[1:], split, end, span, current)
            total = sr.add(total, sr.mul(head, tail))
        return total

    def _evaluate(self, var: Triple, span: Span, current: dict[Triple, SemiringValue]) -> SemiringValue:
        sr = self.semiring
        start, end = span
        total = sr.zero
        for terminal, children, weight in self._rules[var]:
            if terminal:
                if start >= end or self.word[start] != terminal:
                    continue
                inner = start + 1
            else:
                inner = start
            value = self._sequence(children, inner, end, span, current)
            if not sr.is_zero(value):
                total = sr.add(total, sr.mul(weight, value))
        return total

    def _round(self, span: Span, current: dict[Triple, SemiringValue]) -> dict[Triple, SemiringValue]:
        return {var: self._evaluate(var, span, current) for var in self._unknowns}

    def _solve(self, span: Span) -> None:
        settle = len(self._unknowns)
        current = {var: self.semiring.zero for var in self._unknowns}
        stable = False
        for _ in range(settle + 1):
            following = self._round(span, current)
            if following == current:
                stable = True
                break
            current = following

        if not stable:
            growing: set[Triple] = set()
            for _ in range(2 * settle):
                following = self._round(span, current)
                growing.update(v for v in self._unknowns if following[v] != current[v])
                current = following
            if growing:
                self._diverge(span, current, growing)

        for var, value in current.items():
            if not self.semiring.is_zero(value):
                self._table[(var, *span)] = value

    def _diverge(self, span: Span, current: dict[Triple, SemiringValue], growing: set[Triple]) -> None:
        """Pin growing unknowns to ∞ and propagate to a fixpoint."""
        logger.debug(
            "divergence_detected",
            span=span,
            unknowns=sorted(str(v) for v in growing),
        )
        for var in growing:
            current[var] = INF
            self.diverged.add((var, *span))
        for _ in range(len(self._unknowns) + 1):
            following = self._round(span, current)
            for var in growing:
                following[var] = INF
            if following == current:
                break
            current.update(following)


def _check_letters(grammar: MixedGrammar, word: str) -> None:
    alphabet = set(grammar.sigma)
    for letter in word:
        if letter not in alphabet:
            raise AlphabetError(f"letter {letter!r} not in sigma {' '.join(grammar.sigma)}")


def _chart_total(
    grammar: MixedGrammar,
    word: str,
    semiring: Semiring,
    weigh: Callable[[Production], SemiringValue],
) -> SemiringValue:
    _check_letters(grammar, word)
    chart = SpanChart(grammar, word, semiring, weigh)
    total = semiring.zero
    for prod in grammar.rules(X0):
        lead = prod.terminal
        tail = prod.rhs[-1] if isinstance(prod.rhs[-1], str) and len(prod.rhs) > 1 else ""
        (core,) = prod.variables
        assert isinstance(core, Triple)
        if not word.startswith(lead) or not word[len(lead) :].endswith(tail):
            continue
        end = len(word) - len(tail)
        if end < len(lead):
            continue
        value = chart.value(core, len(lead), end)
        total = semiring.add(total, semiring.mul(weigh(prod), value))
    return total


def word_weight(grammar: MixedGrammar, word: str) -> SemiringValue:
    """The coefficient of ``word`` in σ_{x₀}: weighted sum over finite leftmost derivations."""
    return _chart_total(grammar, word, grammar.semiring, lambda prod: prod.weight)


def derivation_count(grammar: MixedGrammar, word: str) -> SemiringValue:
    """Number of distinct finite leftmost derivations x₀ ⇒* ``word`` in ℕ^∞."""
    return _chart_total(grammar, word, NAT_INF, lambda prod: NAT_INF.one)


def omega_prefix_count(
    grammar: MixedGrammar, pda: OmegaPda, lasso: LassoWord, depth: int
) -> SemiringValue:
    """Largest number of live infinite-derivation prefixes over pair-rewrite depths 1..``depth``.

    A prefix z₀ ⇒* x[i,p] counts at depth d when it uses exactly d pair
    rewrites, x is a prefix of the lasso stream and (i, p), read at the
    current lasso position, can still be continued to an accepting run.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    word = lasso_normalize(lasso)
    _check_letters(grammar, word.u + word.v)
    horizon = len(word.u) + (depth + 1) * len(word.v)
    stream = word.prefix(horizon)
    chart = SpanChart(grammar, stream, NAT_INF, lambda prod: NAT_INF.one)
    product = product_pda(pda, word)
    live_pairs = omega_pairs(product)
    size = word.positions

    def position(offset: int) -> int:
        if offset < len(word.u):
            return offset
        return len(word.u) + (offset - len(word.u)) % len(word.v)

    def live(var: Pair, offset: int) -> bool:
        return ((var.i - 1) * size + position(offset) + 1, var.p) in live_pairs

    layer: dict[tuple[Pair, int], SemiringValue] = {}
    _advance(grammar, chart, stream, [(Z0, 0, NAT_INF.one)], layer)
    best: SemiringValue = 0
    for level in range(1, depth + 1):
        count = NAT_INF.sum(c for (var, offset), c in layer.items() if live(var, offset))
        logger.debug("omega_prefix_level", lasso=str(word), depth=level, count=count)
        if NAT_INF.less_than(best, count):
            best = count
        following: dict[tuple[Pair, int], SemiringValue] = {}
        _advance(grammar, chart, stream, ((v, o, c) for (v, o), c in layer.items()), following)
        layer = following
    return best


def _advance(
    grammar: MixedGrammar,
    chart: SpanChart,
    stream: str,
    frontier: Iterable[tuple[Var, int, SemiringValue]],
    into: dict[tuple[Pair, int], SemiringValue],
) -> None:
    """Apply one infinite production to every (variable, offset) in ``frontier``."""
    for var, offset, count in frontier:
        for prod in grammar.rules(var):
            trailing = prod.variables[-1]
            if not isinstance(trailing, Pair):
                continue
            children = tuple(v for v in prod.variables[:-1] if isinstance(v, Triple))
            lead = prod.terminal
            if not stream.startswith(lead, offset):
                continue
            inner = offset + len(lead)
            for end in range(inner, len(stream) + 1):
                ways = chart.sequence(children, inner, end)
                if NAT_INF.is_zero(ways):
                    continue
                key = (trailing, end)
                into[key] = NAT_INF.add(into.get(key, 0), NAT_INF.mul(count, ways))


@dataclass
class Verdict:
    """Outcome of a bounded unambiguity check."""

    ambiguous: bool
    witness: str | None = None
    count: SemiringValue = 0
    detail: str = "unambiguous up to the tested bounds"

    def format_text(self) -> str:
        if not self.ambiguous:
            return self.detail
        return f"ambiguous: {self.witness} has {NAT_INF.format(self.count)} {self.detail}"


def unambiguity_check(
    grammar: MixedGrammar,
    pda: OmegaPda,
    max_len: int,
    lasso_suite: Iterable[tuple[str, str]],
    depth: int = 4,
) -> Verdict:
    """Search for a word with two derivations, finite words first, then lasso prefixes."""
    for length in range(max_len + 1):
        for letters in itertools.product(grammar.sigma, repeat=length):
            word = "".join(letters)
            count = derivation_count(grammar, word)
            if not NAT_INF.less_than(count, 2):
                return Verdict(True, word, count, "finite leftmost derivations")

    if pda.repeated > 0:
        for u, v in lasso_suite:
            lasso = LassoWord(u, v)
            count = omega_prefix_count(grammar, pda, lasso, depth)
            if not NAT_INF.less_than(count, 2):
                return Verdict(True, str(lasso_normalize(lasso)), count, "live infinite derivation prefixes")
    return Verdict(False)
