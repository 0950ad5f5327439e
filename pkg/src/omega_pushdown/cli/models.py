"""Typed records of an automaton spec file."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from omega_pushdown.config import SemiringName


class VectorEntry(BaseModel):
    """One ``I`` or ``P`` line: a coefficient of the initial or final vector."""

    model_config = ConfigDict(frozen=True)

    line: int
    state: int = Field(..., ge=1)
    letter: str
    weight: str = "1"


class TransitionLine(BaseModel):
    """One ``trans`` line: a coefficient of the block M_{top,replacement}."""

    model_config = ConfigDict(frozen=True)

    line: int
    source: int = Field(..., ge=1)
    top: str
    letter: str
    target: int = Field(..., ge=1)
    replacement: tuple[str, ...] = ()
    weight: str = "1"


class SpecFile(BaseModel):
    """A parsed spec file before it is turned into an automaton."""

    model_config = ConfigDict(frozen=True)

    semiring: SemiringName = SemiringName.BOOLEAN
    states: int = Field(..., ge=1, description="State count n")
    repeated: int = Field(default=0, ge=0, description="Repeated bound l")
    gamma: tuple[str, ...] | None = Field(default=None, description="Declared stack alphabet")
    sigma: tuple[str, ...] | None = Field(default=None, description="Declared input alphabet")
    initial_stack: str = Field(..., min_length=1)
    initial: tuple[VectorEntry, ...] = ()
    final: tuple[VectorEntry, ...] = ()
    transitions: tuple[TransitionLine, ...] = ()

    @field_validator("repeated")
    @classmethod
    def repeated_within_states(cls, value: int, info: ValidationInfo) -> int:
        states = info.data.get("states")
        if states is not None and value > states:
            raise ValueError("repeated bound out of range")
        return value
