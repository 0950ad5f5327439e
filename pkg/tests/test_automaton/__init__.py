"""Tests for the automaton model, run oracles, saturation and lassos."""
