"""
Configuration settings for morsebridge
"""

import os
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


def get_env_file() -> str:
    """Get environment file based on MORSEBRIDGE_ENVIRONMENT variable."""
    environment = os.getenv("MORSEBRIDGE_ENVIRONMENT", "").lower()

    if environment == "development":
        return ".env.dev"
    elif environment == "production":
        return ".env.prod"
    else:
        # Default fallback order
        if os.path.exists(".env.dev"):
            return ".env.dev"
        elif os.path.exists(".env.prod"):
            return ".env.prod"
        else:
            return ".env"


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # Application
    app_name: str = "morsebridge"
    version: str = "1.0.0"
    debug: bool = False
    log_level: str = "WARNING"

    # Execution
    max_workers: int = 1
    random_seed: int = 20240611

    # Path lifting checks
    lift_path_max_length: int = 4
    lift_random_paths: int = 100
    lift_random_path_length: int = 8

    # Fixture search
    search_max_tries: int = 20000

    # File paths
    fixtures_directory: str = "fixtures"

    model_config = SettingsConfigDict(
        env_prefix="MORSEBRIDGE_",
        env_file=get_env_file(),
        case_sensitive=False,
        extra="ignore",
    )

    @property
    def effective_log_level(self) -> str:
        """Get the logging level name honouring the debug flag."""
        return "DEBUG" if self.debug else self.log_level.upper()

    @property
    def parallel(self) -> bool:
        """Check if independent checks may run on a thread pool."""
        return self.max_workers > 1


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get settings instance (singleton pattern).

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """
    Reload settings from environment (useful for testing).

    Returns:
        New settings instance
    """
    global _settings
    _settings = Settings()
    return _settings
