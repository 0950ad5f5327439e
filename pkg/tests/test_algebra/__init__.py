"""Tests for semirings and matrices."""
