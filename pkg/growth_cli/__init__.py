"""Command-line front door (``punctured-growth``)."""

from .errors import EXIT_MEASUREMENT, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, UnexpectedVerdict, UsageError
from .settings import Settings, get_settings, reset_settings_cache

__all__ = [
    "EXIT_MEASUREMENT",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VERIFICATION",
    "Settings",
    "UnexpectedVerdict",
    "UsageError",
    "get_settings",
    "reset_settings_cache",
]
