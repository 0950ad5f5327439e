"""Tests for the verification suites and their report."""

from __future__ import annotations

import pytest

from omega_pushdown.automaton.model import OmegaPda
from omega_pushdown.config import Settings
from omega_pushdown.verification.instances import LASSO_SUITE, lasso_cases
from omega_pushdown.verification.suites import (
    SUITES,
    SuiteContext,
    SuiteResult,
    render_report,
    run_suites,
)


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(settings: Settings, name: str) -> None:
    """Test that each suite passes on built-in and seeded random automata."""
    (result,) = run_suites([name], SuiteContext(settings=settings, seed=11))
    assert result.failures == []
    assert result.ok
    assert result.passed > 0


def test_suites_keep_requested_order(settings: Settings) -> None:
    """Test that the thread pool returns results in request order."""
    names = ["lasso", "semiring-laws", "fixpoints"]
    results = run_suites(names, SuiteContext(settings=settings))
    assert [r.name for r in results] == names


def test_unknown_suite(settings: Settings) -> None:
    """Test that an unknown suite name is refused."""
    with pytest.raises(ValueError, match="unknown suite 'bogus'"):
        run_suites(["bogus"], SuiteContext(settings=settings))


def test_report_is_deterministic(settings: Settings) -> None:
    """Test that the same seed renders the same report."""
    ctx = SuiteContext(settings=settings, seed=5)
    first = render_report(run_suites(["fixpoints", "triple-equivalence"], ctx))
    second = render_report(run_suites(["fixpoints", "triple-equivalence"], ctx))
    assert first == second


def test_report_format() -> None:
    """Test the report layout, including truncated failure lists."""
    results = [
        SuiteResult("alpha", passed=2),
        SuiteResult("beta", passed=1, failed=3, failures=["one", "two", "three"]),
    ]
    assert render_report(results, limit=2) == (
        "alpha: ok passed=2 failed=0 skipped=0\n"
        "beta: FAILED passed=1 failed=3 skipped=0\n"
        "  - one\n"
        "  - two\n"
        "  ... 1 more\n"
        "total: passed=3 failed=3\n"
    )


def test_result_tally() -> None:
    """Test that check and skip keep the tally."""
    result = SuiteResult("x")
    result.check(True, "fine")
    result.check(False, "broken")
    result.skip("not applicable")
    assert (result.passed, result.failed, result.skipped) == (1, 1, 1)
    assert result.failures == ["broken"]
    assert not result.ok


def test_user_instance_replaces_generated(settings: Settings, pda_e4: OmegaPda) -> None:
    """Test that checks whose preconditions fail on a user automaton are skipped."""
    ctx = SuiteContext(settings=settings, instances=(("spec", pda_e4),))
    (result,) = run_suites(["counting"], ctx)
    assert result.skipped == 1
    assert result.passed == 0
    assert result.ok


def test_curated_lasso_catalogue() -> None:
    """Test that the curated catalogue is large and its lasso suite has ten words."""
    cases = lasso_cases()
    assert len(cases) >= 20
    assert len({case.name for case in cases}) == len(cases)
    assert len(LASSO_SUITE) == 10
