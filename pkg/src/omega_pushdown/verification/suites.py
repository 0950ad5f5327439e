"""Property suites behind ``omega-pushdown verify``.

Every suite compares an engine against an independent oracle on built-in and
seeded random automata and returns pass/fail counts. Suites are independent
and run on a thread pool; results come back in the order they were asked for.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from jinja2 import Environment, StrictUndefined

from omega_pushdown.algebra.matrix import SqMatrix, identity, mat_add, mat_mul, mat_star, nfa_buchi_lasso_accept
from omega_pushdown.algebra.semiring import BOOLEAN, INF, NAT_INF, Semiring, SemiringValue
from omega_pushdown.automaton.lasso import LassoWord, lasso_accepts
from omega_pushdown.automaton.model import EPS, OmegaPda, Stack, format_stack
from omega_pushdown.automaton.reachability import (
    a_m_edges,
    a_m_step,
    check_factorization,
    omega_pairs,
    reach_set,
    saturation_round,
    star_triples,
)
from omega_pushdown.automaton.runs import (
    RunProfiler,
    accepts_by_search,
    emptying_targets,
    enumerate_accepting_runs,
    enumerate_omega_run_prefixes,
    epsilon_pump_free,
    exhaustive_step_bound,
)
from omega_pushdown.config import SemiringName, Settings
from omega_pushdown.grammar.construction import Triple, productive_triples, triple_pair_construct
from omega_pushdown.grammar.derivations import unambiguity_check, word_weight
from omega_pushdown.utils import get_logger
from omega_pushdown.verification.generators import (
    EpsilonPolicy,
    GeneratorConfig,
    instance_rng,
    random_pda,
    witness_lengths,
)
from omega_pushdown.verification.instances import CURATED, LASSO_SUITE, e1, e3, e4, lasso_cases

logger = get_logger(__name__)

Labelled = tuple[str, OmegaPda]


@dataclass
class SuiteResult:
    """Pass/fail tally of one suite."""

    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, detail: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(detail)

    def skip(self, detail: str) -> None:
        self.skipped += 1
        logger.info("check_skipped", suite=self.name, detail=detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass(frozen=True)
class SuiteContext:
    """Inputs shared by all suites. ``instances`` replaces the generated automata when given."""

    settings: Settings
    seed: int = 0
    instances: tuple[Labelled, ...] = ()

    def generated(self, suite: str, count: int, **overrides: Any) -> list[Labelled]:
        if self.instances:
            return list(self.instances)
        config = GeneratorConfig.from_settings(self.settings, **overrides)
        return [
            (f"{suite}#{k}", random_pda(instance_rng(self.seed, suite, k), config))
            for k in range(count)
        ]

    def with_curated(self, suite: str, count: int, **overrides: Any) -> list[Labelled]:
        generated = self.generated(suite, count, **overrides)
        if self.instances:
            return generated
        return [(name, make()) for name, make in CURATED.items()] + generated


def _words(sigma: tuple[str, ...], max_len: int) -> Iterator[str]:
    for length in range(max_len + 1):
        for letters in itertools.product(sigma, repeat=length):
            yield "".join(letters)


def _stacks(gamma: tuple[str, ...], max_len: int) -> Iterator[Stack]:
    for length in range(max_len + 1):
        yield from itertools.product(gamma, repeat=length)


def _no_growth(pda: OmegaPda) -> bool:
    return all(t.letter != EPS or len(t.replacement) <= 1 for t in pda.matrix.transitions())


# ─── semiring-laws ────────────────────────────────────────────────────


def _sample_nat_inf(ctx: SuiteContext, count: int) -> list[SemiringValue]:
    rng = instance_rng(ctx.seed, "semiring-laws", 0)
    pool: list[SemiringValue] = [0, 1, 2, 3, INF]
    return [rng.choice(pool) if rng.random() < 0.5 else rng.randint(0, 10**6) for _ in range(count)]


def _random_matrix(ctx: SuiteContext, semiring: Semiring, index: int) -> SqMatrix:
    rng = instance_rng(ctx.seed, f"matrix-{semiring.name}", index)
    n = rng.randint(1, 3)
    if semiring is BOOLEAN:
        rows = [[rng.random() < 0.4 for _ in range(n)] for _ in range(n)]
    else:
        choices: list[SemiringValue] = [0, 0, 0, 1, 2, INF]
        rows = [[rng.choice(choices) for _ in range(n)] for _ in range(n)]
    return SqMatrix.from_rows(semiring, rows)


def semiring_laws(ctx: SuiteContext) -> SuiteResult:
    """Star and omega fixed-point laws, semiring axioms, and the matrix star equations."""
    result = SuiteResult("semiring-laws")
    samples: list[tuple[Semiring, list[SemiringValue]]] = [
        (BOOLEAN, [False, True]),
        (NAT_INF, _sample_nat_inf(ctx, 1000)),
    ]
    for sr, values in samples:
        for a in values:
            result.check(sr.star(a) == sr.add(sr.one, sr.mul(a, sr.star(a))), f"{sr.name}: a* = 1 + a·a* at {a}")
            result.check(sr.omega(a) == sr.mul(a, sr.omega(a)), f"{sr.name}: a^ω = a·a^ω at {a}")
        triples = itertools.product(values[:12], repeat=3) if sr is NAT_INF else itertools.product(values, repeat=3)
        for a, b, c in triples:
            result.check(sr.mul(a, sr.add(b, c)) == sr.add(sr.mul(a, b), sr.mul(a, c)), f"{sr.name}: distributivity at {a},{b},{c}")
            result.check(sr.mul(sr.mul(a, b), c) == sr.mul(a, sr.mul(b, c)), f"{sr.name}: associativity at {a},{b},{c}")
    for sr in (BOOLEAN, NAT_INF):
        for index in range(50):
            m = _random_matrix(ctx, sr, index)
            star = mat_star(m)
            unit = identity(sr, m.n)
            result.check(star == mat_add(unit, mat_mul(m, star)), f"{sr.name}: A* = I + A·A* for {m.rows}")
            result.check(star == mat_add(unit, mat_mul(star, m)), f"{sr.name}: A* = I + A*·A for {m.rows}")
    return result


# ─── factorization ────────────────────────────────────────────────────


def factorization(ctx: SuiteContext) -> SuiteResult:
    """(M*)_{pπ,ε} = (M*)_{p,ε}(M*)_{π,ε} on bounded computations, |π| ≤ 2."""
    result = SuiteResult("factorization")
    settings = ctx.settings
    count = settings.verify_random_instances
    boolean = ctx.with_curated("factorization", count)
    counted = [
        (label, pda.counting_view())
        for label, pda in ctx.generated("factorization-nat-inf", max(1, count // 4), semiring=SemiringName.NAT_INF)
    ]
    for label, pda in boolean + counted:
        profiler = RunProfiler(pda, settings.factorization_max_len, settings.factorization_max_steps)
        for p in pda.gamma:
            for pi in _stacks(pda.gamma, 2):
                ok = check_factorization(
                    pda,
                    p,
                    pi,
                    settings.factorization_max_len,
                    settings.factorization_max_steps,
                    profiler,
                )
                result.check(ok, f"{label} ({pda.semiring.name}): p={p} π={format_stack(pi)}")
    return result


# ─── fixpoints ────────────────────────────────────────────────────────


def fixpoints(ctx: SuiteContext) -> SuiteResult:
    """Star triples are the least fixpoint; ω-pairs solve z = A_M z and grow with l."""
    result = SuiteResult("fixpoints")
    for label, pda in ctx.with_curated("fixpoints", ctx.settings.verify_random_instances):
        pda = pda.support()
        triples = star_triples(pda)
        keys = reach_set(triples)
        result.check(saturation_round(pda, triples) == triples, f"{label}: extra round changes the triples")
        for t in sorted(triples):
            rest = keys - {t.key}
            derived = reach_set(saturation_round(pda, triples - {t}))
            result.check(not derived <= rest, f"{label}: {t.key} can be dropped from the fixpoint")

        lengths = witness_lengths(pda)
        bound = max(lengths.values(), default=0)
        oracle = frozenset(
            (i, p, j)
            for i in pda.states
            for p in pda.gamma
            for j in emptying_targets(pda, i, p, bound)
        )
        result.check(oracle == keys, f"{label}: reach differs from bounded search (bound {bound})")
        result.check(frozenset(lengths) == keys, f"{label}: witness lengths miss triples")

        edges = a_m_edges(pda, triples)
        pairs = omega_pairs(pda, triples, edges)
        result.check(a_m_step(edges, pairs) == pairs, f"{label}: ω-pairs are not a fixpoint of A_M")
        result.check(not omega_pairs(pda.with_repeated(0)), f"{label}: l=0 gives ω-pairs")
        for larger in range(pda.repeated + 1, pda.n + 1):
            result.check(
                omega_pairs(pda.with_repeated(larger)) >= pairs,
                f"{label}: ω-pairs shrink from l={pda.repeated} to l={larger}",
            )
    return result


# ─── triple-equivalence ───────────────────────────────────────────────


def triple_equivalence(ctx: SuiteContext) -> SuiteResult:
    """Grammar words equal automaton words; productive triples equal reach."""
    result = SuiteResult("triple-equivalence")
    settings = ctx.settings
    instances = ctx.with_curated(
        "triple-equivalence", settings.verify_random_instances, epsilon=EpsilonPolicy.NO_GROWTH
    )
    for label, pda in instances:
        pda = pda.support()
        grammar = triple_pair_construct(pda)
        expected = {Triple(i, p, j) for i, p, j in reach_set(star_triples(pda))}
        result.check(productive_triples(grammar) == expected, f"{label}: productive triples differ from reach")
        if not _no_growth(pda):
            result.skip(f"{label}: ε-moves grow the stack, search oracle is not exhaustive")
            continue
        growth = max(1, pda.matrix.max_replacement - 1)
        for word in _words(pda.sigma, settings.verify_word_len):
            in_grammar = not grammar.semiring.is_zero(word_weight(grammar, word))
            in_automaton = accepts_by_search(pda, word, 1 + len(word) * growth)
            result.check(in_grammar == in_automaton, f"{label}: {word or 'eps'} grammar={in_grammar} automaton={in_automaton}")
    return result


# ─── lasso ────────────────────────────────────────────────────────────


def _letter_matrices(pda: OmegaPda) -> dict[str, SqMatrix]:
    rows: dict[str, list[list[bool]]] = {}
    for t in pda.matrix.transitions():
        grid = rows.setdefault(t.letter, [[False] * pda.n for _ in range(pda.n)])
        grid[t.source - 1][t.target - 1] = True
    return {letter: SqMatrix.from_rows(BOOLEAN, grid) for letter, grid in rows.items()}


def _stack_free(pda: OmegaPda) -> bool:
    preserving = all(
        t.top == pda.initial_stack and t.replacement == (pda.initial_stack,)
        for t in pda.matrix.transitions()
    )
    return preserving and all(poly.letters in ((), (EPS,)) for poly in pda.initial)


def lasso(ctx: SuiteContext) -> SuiteResult:
    """Curated verdicts, representation invariance, bounded-run soundness, stack-free agreement."""
    result = SuiteResult("lasso")
    settings = ctx.settings
    suite = [LassoWord(u, v) for u, v in LASSO_SUITE]

    if not ctx.instances:
        for case in lasso_cases():
            for word in suite:
                result.check(lasso_accepts(case.pda, word) == case.expect(word), f"{case.name}: {word}")

    for label, pda in ctx.generated("lasso", settings.verify_random_instances):
        for word in suite:
            accepted = lasso_accepts(pda, word)
            variants = (LassoWord(word.u + word.v, word.v), LassoWord(word.u, word.v * 2))
            result.check(
                all(lasso_accepts(pda, w) == accepted for w in variants),
                f"{label}: representations of {word} disagree",
            )
            if enumerate_omega_run_prefixes(pda, word.u, word.v, settings.omega_stack_cap):
                result.check(accepted, f"{label}: bounded run accepts {word} but saturation rejects")

    stack_free = ctx.generated(
        "stack-free",
        settings.verify_stack_free_instances,
        gamma_preserving=True,
        lettered_vectors=False,
    )
    for label, pda in stack_free:
        if not _stack_free(pda):
            result.skip(f"{label}: not stack-free")
            continue
        matrices = _letter_matrices(pda)
        initial = [bool(poly) for poly in pda.initial]
        repeated = range(1, pda.repeated + 1)
        for word in suite:
            expected = nfa_buchi_lasso_accept(matrices, initial, repeated, word.u, word.v)
            result.check(lasso_accepts(pda, word) == expected, f"{label}: finite-automaton verdict differs on {word}")
    return result


# ─── counting ─────────────────────────────────────────────────────────


def counting(ctx: SuiteContext) -> SuiteResult:
    """Derivation counts equal run counts; ε-pumps diverge; the ambiguity verdicts."""
    result = SuiteResult("counting")
    settings = ctx.settings
    instances = ctx.with_curated(
        "counting",
        settings.verify_counting_instances,
        semiring=SemiringName.NAT_INF,
        epsilon=EpsilonPolicy.POPS_ONLY,
    )
    for label, pda in instances:
        pda = pda.counting_view()
        if not epsilon_pump_free(pda):
            result.skip(f"{label}: ε-moves that do not pop make run counts unbounded")
            continue
        grammar = triple_pair_construct(pda)
        for word in _words(pda.sigma, settings.verify_word_len):
            runs = enumerate_accepting_runs(pda, word, exhaustive_step_bound(pda, word))
            expected = NAT_INF.sum(run.weight(NAT_INF) for run in runs)
            actual = word_weight(grammar, word)
            result.check(actual == expected, f"{label}: {word or 'eps'} grammar={actual} runs={expected}")

    if not ctx.instances:
        pump = e4().counting_view()
        result.check(word_weight(triple_pair_construct(pump), "b") is INF, "E4: b should have infinitely many derivations")
        counts = [len(enumerate_accepting_runs(pump, "b", bound)) for bound in (4, 6, 8)]
        result.check(counts[0] < counts[1] < counts[2], f"E4: run counts {counts} do not grow")

        for name, pda, witness in (("E1", e1(), None), ("E3", e3(), "a"), ("E4", e4(), "b")):
            verdict = unambiguity_check(triple_pair_construct(pda), pda, 8 if witness is None else 2, LASSO_SUITE)
            result.check(verdict.witness == witness, f"{name}: {verdict.format_text()}")
    return result


SUITES: dict[str, Callable[[SuiteContext], SuiteResult]] = {
    "semiring-laws": semiring_laws,
    "factorization": factorization,
    "fixpoints": fixpoints,
    "triple-equivalence": triple_equivalence,
    "lasso": lasso,
    "counting": counting,
}


def run_suites(names: list[str], ctx: SuiteContext) -> list[SuiteResult]:
    """Run the named suites concurrently, returning results in the order of ``names``."""
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")

    def run_one(name: str) -> SuiteResult:
        started = time.perf_counter()
        result = SUITES[name](ctx)
        logger.info(
            "suite_finished",
            suite=name,
            passed=result.passed,
            failed=result.failed,
            skipped=result.skipped,
            elapsed=round(time.perf_counter() - started, 3),
        )
        return result

    with ThreadPoolExecutor(max_workers=ctx.settings.verify_workers) as pool:
        return list(pool.map(run_one, names))


REPORT_TEMPLATE = """\
{% for r in results -%}
{{ r.name }}: {{ "ok" if r.ok else "FAILED" }} passed={{ r.passed }} failed={{ r.failed }} skipped={{ r.skipped }}
{% for detail in r.failures[:limit] %}  - {{ detail }}
{% endfor %}{% if r.failures|length > limit %}  ... {{ r.failures|length - limit }} more
{% endif %}{% endfor -%}
total: passed={{ passed }} failed={{ failed }}
"""

_environment = Environment(undefined=StrictUndefined, autoescape=False, keep_trailing_newline=True)


def render_report(results: list[SuiteResult], limit: int = 10) -> str:
    return _environment.from_string(REPORT_TEMPLATE).render(
        results=results,
        limit=limit,
        passed=sum(r.passed for r in results),
        failed=sum(r.failed for r in results),
    )
