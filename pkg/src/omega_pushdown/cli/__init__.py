"""Spec-file front end and command implementations."""

from omega_pushdown.cli.specfile import SpecError, load_spec, parse_spec, serialize_spec

__all__ = ["SpecError", "load_spec", "parse_spec", "serialize_spec"]
