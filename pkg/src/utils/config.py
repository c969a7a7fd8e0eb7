# src/utils/config.py
from __future__ import annotations

import json
from typing import List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Central settings loaded from environment (.env).
    Extra env vars are ignored so unrelated variables never break a run.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        extra="ignore",
        case_sensitive=False,
    )

    # --- Workers ---
    threads: int = Field(default=4, ge=1, validation_alias="TREETEN_THREADS")

    # --- Logging ---
    log_level: str = Field(default="INFO", validation_alias="LOG_LEVEL")
    log_dir: str = Field(default="logs", validation_alias="LOG_DIR")

    # --- Numerical defaults ---
    default_tol: float = Field(default=1e-12, ge=0.0, validation_alias="TREETEN_DEFAULT_TOL")
    power_tol: float = Field(default=1e-14, ge=0.0, validation_alias="TREETEN_POWER_TOL")
    default_samples: int = Field(default=1000, ge=1, validation_alias="TREETEN_DEFAULT_SAMPLES")
    mi_samples: int = Field(default=10_000, ge=1, validation_alias="TREETEN_MI_SAMPLES")

    # Kept as a raw string; parsed list exposed via property below
    chi_list: Optional[str] = Field(default=None, validation_alias="TREETEN_CHI_LIST")

    # ---------- Helpers ----------
    @property
    def chi_list_values(self) -> List[int]:
        """
        Accept either:
        - comma-separated: "1,2,4,8"
        - JSON array string: '[1, 2, 4, 8]'
        """
        return parse_int_list(self.chi_list) if self.chi_list else []


def parse_int_list(raw: str) -> List[int]:
    s = raw.strip()
    if s.startswith("["):
        try:
            arr = json.loads(s)
            if isinstance(arr, list):
                return [int(x) for x in arr]
        except (ValueError, TypeError):
            pass
    return [int(part) for part in s.split(",") if part.strip()]


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings (tests patch the environment and reload)."""
    global _settings
    _settings = None
