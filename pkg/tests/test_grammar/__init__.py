"""Tests for the triple-pair grammar."""
