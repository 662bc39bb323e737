"""
Runtime configuration

Values come from ALBSCREEN_* environment variables (or a .env file loaded
by main.py). Command-line flags override anything set here.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings resolved from the environment"""

    model_config = SettingsConfigDict(
        env_prefix="ALBSCREEN_",
        env_file=".env",
        extra="ignore",
    )

    threads: int = Field(1, ge=1, description="Default worker count for --threads")
    log_level: str = Field("INFO", description="Root log level")
    kernel: Literal["hall", "gaussian"] = Field("hall", description="Classifier kernel switch")
    output_dir: str = Field(".", description="Directory for relative output paths")
    default_seed: int = Field(20240101, ge=0, description="Seed used when --seed is omitted")


@lru_cache()
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
