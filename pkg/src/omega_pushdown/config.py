"""Application configuration using pydantic-settings."""

from __future__ import annotations

from enum import StrEnum
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SemiringName(StrEnum):
    """Semirings an automaton can be weighted over."""

    BOOLEAN = "boolean"
    NAT_INF = "nat-inf"


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix ``OMEGA_PDA_``)."""

    model_config = SettingsConfigDict(
        env_prefix="OMEGA_PDA_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Application
    log_level: str = Field(default="warning")

    # Arithmetic
    nat_inf_bound: int | None = Field(
        default=None,
        ge=1,
        description="Saturate ℕ^∞ sums and products above this value to ∞ (unset = exact)",
    )

    # Bounded oracles
    factorization_max_len: int = Field(default=6, ge=0, le=12)
    factorization_max_steps: int = Field(default=8, ge=1, le=24)
    derive_max_steps: int = Field(default=40, ge=1)
    omega_stack_cap: int = Field(default=4, ge=1, le=10)
    omega_prefix_depth: int = Field(default=4, ge=1, le=12)
    enumerate_max_len: int = Field(default=6, ge=0, le=16)

    # Verification
    verify_seed: int = Field(default=0)
    verify_workers: int = Field(default=4, ge=1, le=64)
    verify_random_instances: int = Field(default=100, ge=1)
    verify_counting_instances: int = Field(default=50, ge=1)
    verify_stack_free_instances: int = Field(default=50, ge=1)
    verify_word_len: int = Field(default=6, ge=0, le=10)

    # Random instance generator bounds
    max_states: int = Field(default=3, ge=1, le=6)
    max_gamma: int = Field(default=3, ge=1, le=6)
    max_sigma: int = Field(default=2, ge=1, le=4)
    max_blocks: int = Field(default=6, ge=1, le=16)
    max_replacement: int = Field(default=2, ge=0, le=3)


@lru_cache
def get_settings() -> Settings:
    """Get cached application settings singleton."""
    return Settings()
