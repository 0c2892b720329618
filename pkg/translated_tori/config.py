"""
Runtime settings.

Values are read from the environment. A `.env.local` file at the repository
root is loaded first when it exists, otherwise python-dotenv looks for a
plain `.env`:

    TORI_MAX_PARTITION_SIZE=14
    TORI_PARTITION_NODE_BUDGET=2000000
    TORI_SPECIALIZATIONS=20
    TORI_SEED=20011
    TORI_CONDUCTOR_CAP=1024
    TORI_LOG_LEVEL=WARNING
"""

from __future__ import annotations

import os
import pathlib
from dataclasses import dataclass, replace
from functools import lru_cache

from dotenv import load_dotenv

from .errors import ValidationError

env_local = pathlib.Path(__file__).resolve().parent.parent / ".env.local"
if env_local.exists():
    load_dotenv(env_local)
else:
    load_dotenv()

HARD_PARTITION_CAP = 14
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    max_partition_size: int = HARD_PARTITION_CAP
    partition_node_budget: int = 2_000_000
    specializations: int = 20
    seed: int = 20011
    conductor_cap: int = 1024
    log_level: str = "WARNING"

    def with_overrides(self, **kwargs) -> "Settings":
        clean = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **clean).validated()

    def validated(self) -> "Settings":
        if not 1 <= self.max_partition_size <= HARD_PARTITION_CAP:
            raise ValidationError(
                f"max_partition_size must lie in 1..{HARD_PARTITION_CAP}, got {self.max_partition_size}"
            )
        if self.partition_node_budget < 1:
            raise ValidationError("partition_node_budget must be positive")
        if self.specializations < 1:
            raise ValidationError("specializations must be positive")
        if self.conductor_cap < 1:
            raise ValidationError("conductor_cap must be positive")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValidationError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")
        return self


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}")


def load_settings() -> Settings:
    """Build settings from the current environment."""
    return Settings(
        max_partition_size=_env_int("TORI_MAX_PARTITION_SIZE", HARD_PARTITION_CAP),
        partition_node_budget=_env_int("TORI_PARTITION_NODE_BUDGET", 2_000_000),
        specializations=_env_int("TORI_SPECIALIZATIONS", 20),
        seed=_env_int("TORI_SEED", 20011),
        conductor_cap=_env_int("TORI_CONDUCTOR_CAP", 1024),
        log_level=os.getenv("TORI_LOG_LEVEL", "WARNING").upper(),
    ).validated()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
