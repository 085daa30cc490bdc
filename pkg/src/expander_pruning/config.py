# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from dataclasses import dataclass
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

from expander_pruning import find_project_root

PROJECT_ROOT = find_project_root()


@dataclass
class DirectoryConstants:
    """Directory paths constants. Tests can override these constants."""

    EP_BASE_DIR: Path = PROJECT_ROOT  # base directory for experiment artifacts
    EP_OUTPUT_DIR: Path = EP_BASE_DIR / "runs"  # default output directory for run logs and summaries
    EP_GRAPHS_DIR: Path = EP_BASE_DIR / "graphs"  # default directory for generated graph files


class AppEnvironment(BaseSettings):
    """Application environment settings.

    All settings can be overridden via environment variables.

    The environment variables are prefixed with "EP_" to avoid conflicts with other tools.
    """

    # Application Settings
    EP_LOG_LEVEL: str = "INFO"  # log level to use
    EP_ENVIRONMENT: str = "development"  # environment the tool runs in

    # Algorithm Settings
    EP_DEFAULT_PRESET: str = "desk"  # constant preset used when the CLI does not name one
    EP_JOB_SAFETY_FACTOR: int = 2  # multiplier on estimated background job work when sizing step budgets

    # Oracle Settings
    EP_ORACLE_MAX_N: int = 16  # largest vertex count on which brute-force oracle checks run
    EP_DEBUG_ORACLES: bool = False  # re-verify caller-asserted preconditions with the oracles

    model_config = SettingsConfigDict(case_sensitive=True, env_file=".env", env_file_encoding="utf-8", extra="ignore")

    def is_production(self) -> bool:
        """Check if the environment is production."""
        return self.EP_ENVIRONMENT == "production"

    def is_development(self) -> bool:
        """Check if the environment is development."""
        return self.EP_ENVIRONMENT == "development"


DIRS = DirectoryConstants()
ENV = AppEnvironment()
