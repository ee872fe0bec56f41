"""Command-level errors and their exit codes."""

from __future__ import annotations

from growth_estimators import GridError
from punctured_functions import GrowthLabError, SchemaError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MEASUREMENT = 3
EXIT_VERIFICATION = 4


class UsageError(GrowthLabError):
    """Bad flags or flag combinations."""


class UnexpectedVerdict(GrowthLabError):
    """A scenario reported something other than its designed outcome."""


def exit_code_for(error: GrowthLabError) -> int:
    if isinstance(error, UnexpectedVerdict):
        return EXIT_VERIFICATION
    if isinstance(error, UsageError | SchemaError | GridError):
        return EXIT_USAGE
    return EXIT_MEASUREMENT
