"""Curated automata, random instances and the oracle-backed property suites."""

from omega_pushdown.verification.suites import SUITES, SuiteContext, SuiteResult, run_suites

__all__ = ["SUITES", "SuiteContext", "SuiteResult", "run_suites"]
