"""Runtime settings: environment variables with a ``PUNCTURED_GROWTH_`` prefix.

Environment variables
---------------------
PUNCTURED_GROWTH_OUTPUT_DIR
    Where commands write their files (default ``outputs``).
PUNCTURED_GROWTH_LOG_LEVEL
    Root logging level (default ``INFO``).
PUNCTURED_GROWTH_BASE_POINTS
    Starting trapezoid size of the circle quadrature (default 1024).
PUNCTURED_GROWTH_WORKERS
    Thread pool size for growth-table rows (default 1).
PUNCTURED_GROWTH_NO_COLOR
    Anything but a falsey value disables ANSI colors.
PUNCTURED_GROWTH_TRACE
    Anything but a falsey value exports tracing spans to the console.

Command-line flags override all of these.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from dotenv import dotenv_values, load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = "PUNCTURED_GROWTH_"

_FALSEY = {"false", "0", "no", "off", ""}


@dataclass(frozen=True)
class Settings:
    output_dir: Path = Path("outputs")
    log_level: str = "INFO"
    base_points: int = 1024
    workers: int = 1
    no_color: bool = False
    trace: bool = False


def load_env_files(root: Path | None = None) -> None:
    """Load ``.env`` then overlay ``.env.dev``.

    ``.env`` never overrides variables already set in the real environment;
    ``.env.dev`` overrides, but only with non-empty values so that an empty
    placeholder never shadows a real value.
    """
    root = root or Path.cwd()
    load_dotenv(root / ".env", override=False)
    for key, value in dotenv_values(root / ".env.dev").items():
        if value is not None and value.strip() != "":
            os.environ[key] = value


def _env(name: str) -> str | None:
    value = os.getenv(ENV_PREFIX + name)
    return value.strip() if value is not None else None


def _flag(name: str) -> bool:
    value = _env(name)
    return value is not None and value.lower() not in _FALSEY


def _int(name: str, default: int) -> int:
    value = _env(name)
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning("ignoring %s%s=%r: not an integer", ENV_PREFIX, name, value)
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings resolved from the environment."""
    return Settings(
        output_dir=Path(_env("OUTPUT_DIR") or "outputs"),
        log_level=(_env("LOG_LEVEL") or "INFO").upper(),
        base_points=_int("BASE_POINTS", 1024),
        workers=max(1, _int("WORKERS", 1)),
        no_color=_flag("NO_COLOR"),
        trace=_flag("TRACE"),
    )


def reset_settings_cache() -> None:
    """Forget cached settings so a changed environment takes effect (tests)."""
    get_settings.cache_clear()
