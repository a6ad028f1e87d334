"""
Configuration module - loads all env vars using pydantic-settings.
This is the SINGLE SOURCE OF TRUTH for numerical defaults and run locations.

Every variable can be set from the environment with the GFSHOCK_ prefix
(GFSHOCK_OUT, GFSHOCK_LOG_LEVEL, ...) or from a local .env file.
"""

from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Output (GFSHOCK_OUT overrides the directory named in a scenario)
    out: Optional[str] = None
    default_out: str = "output"

    # Regularized profiles
    profile_nodes: int = 1024

    # Jump residual acceptance
    residual_tol: float = 1e-9

    # Two-wave Newton solves
    newton_max_iter: int = 100
    newton_tol: float = 1e-12

    # Split steps are retried with a halved time step this many times
    cfl_retry_limit: int = 4

    # Logging
    log_level: str = "INFO"
    debug: bool = False

    def output_dir(self, requested: Optional[str] = None) -> str:
        """Directory a run writes into: env override, then the scenario, then the default."""
        if self.out:
            return self.out
        return requested or self.default_out

    # Pydantic v2 config
    model_config = SettingsConfigDict(
        env_prefix="GFSHOCK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    return Settings()
