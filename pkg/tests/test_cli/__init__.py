"""Tests for spec files and commands."""
