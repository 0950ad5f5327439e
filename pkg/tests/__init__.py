"""Test suite for omega-pushdown."""
