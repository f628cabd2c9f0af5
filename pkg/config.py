import os
from typing import Optional

from dotenv import load_dotenv

from exceptions import ConfigurationError

load_dotenv()


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    """Read an integer env var; empty or unset falls back to *default*."""
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None


class Config:
    # ------------------------------------------------------------------ #
    # Logging
    # ------------------------------------------------------------------ #

    # Verbosity of the CLI and library loggers (DEBUG, INFO, WARNING, ...).
    LOG_LEVEL: str = os.getenv("IRREDFORGE_LOG", "WARNING").upper().strip()

    # "text" for terminals, "json" for one-object-per-line log shipping.
    LOG_FORMAT: str = os.getenv("LOG_FORMAT", "text").lower().strip()

    # ------------------------------------------------------------------ #
    # Execution
    # ------------------------------------------------------------------ #

    # Worker processes for family enumeration and normality statistics.
    # Results are identical for every value; 1 runs fully in-process.
    THREADS: int = _int_env("IRREDFORGE_THREADS", os.cpu_count() or 1)

    # Seed for `verify --random` sweeps when --seed is not given.
    SEED: int = _int_env("IRREDFORGE_SEED", 42)

    # ------------------------------------------------------------------ #
    # Arithmetic back ends
    # ------------------------------------------------------------------ #

    # Fields with at most this many elements get exp/log/Zech tables.
    TABLE_LIMIT: int = _int_env("IRREDFORGE_TABLE_LIMIT", 1 << 16)

    # Same switch for oracle extension contexts F_{q^s}; table construction
    # there goes through slow residue arithmetic, so the bound is lower.
    EXTENSION_TABLE_LIMIT: int = _int_env("IRREDFORGE_EXTENSION_TABLE_LIMIT", 1 << 12)

    # Largest field order accepted by field_new (q^n - 1 must stay factorable).
    MAX_FIELD_ORDER: int = 1 << 32

    @classmethod
    def validate(cls) -> None:
        if cls.LOG_FORMAT not in ("text", "json"):
            raise ConfigurationError(f"LOG_FORMAT must be 'text' or 'json', got {cls.LOG_FORMAT!r}")
        if cls.THREADS < 1:
            raise ConfigurationError(f"IRREDFORGE_THREADS must be >= 1, got {cls.THREADS}")
        if cls.TABLE_LIMIT < 0:
            raise ConfigurationError(f"IRREDFORGE_TABLE_LIMIT must be >= 0, got {cls.TABLE_LIMIT}")
        if cls.EXTENSION_TABLE_LIMIT < 0:
            raise ConfigurationError(
                f"IRREDFORGE_EXTENSION_TABLE_LIMIT must be >= 0, got {cls.EXTENSION_TABLE_LIMIT}"
            )
