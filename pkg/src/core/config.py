"""
Configuration settings for the application
"""

from functools import lru_cache
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    model_config = SettingsConfigDict(
        env_prefix="NILRING_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # HTTP report service
    environment: str = "production"
    port: int = 8000

    # Ring construction
    size_cap: int = 4096
    table_cache_limit: int = 256  # full add/mul tables kept only up to this size

    # Axiom checks
    exhaustive_axiom_limit: int = 64
    axiom_samples: int = 10_000
    random_seed: int = 0

    # Witness reporting
    full_witness_limit: int = 64  # above this ring size only the first witness is kept
    display_witness_limit: int = 8
    witness_limit: Optional[int] = None

    # Theorem runs
    catalog_path: Optional[str] = None
    workers: int = 1

    # Logging
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    @field_validator("size_cap", "table_cache_limit", "axiom_samples", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("witness_limit")
    @classmethod
    def _non_negative(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 0:
            raise ValueError("must not be negative")
        return value


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
