"""
Colored Logger Module
Provides logging with colors for scenario runs, measurements and outputs.
"""

from __future__ import annotations

import logging
import os
import sys

from theorem_verifier import CheckStatus, Outcome, Verdict


def _color_enabled() -> bool:
    flag = os.getenv("PUNCTURED_GROWTH_NO_COLOR", "").strip().lower()
    if flag not in {"", "false", "0", "no", "off"}:
        return False
    return sys.stdout.isatty()


# Color codes for enhanced logging
ENABLE_COLOR = _color_enabled()
GREEN = "\033[32m" if ENABLE_COLOR else ""
BLUE = "\033[34m" if ENABLE_COLOR else ""
ORANGE = "\033[38;5;208m" if ENABLE_COLOR else ""
RED = "\033[31m" if ENABLE_COLOR else ""
YELLOW = "\033[38;5;226m" if ENABLE_COLOR else ""
PURPLE = "\033[35m" if ENABLE_COLOR else ""
CYAN = "\033[36m" if ENABLE_COLOR else ""
RESET = "\033[0m" if ENABLE_COLOR else ""

_OUTCOME_COLOR = {
    Outcome.PASS: GREEN,
    Outcome.HYPOTHESIS_NOT_MET: ORANGE,
    Outcome.FAIL: RED,
}


class ColoredLogger:
    """Logger with color coding for the growth commands"""

    def __init__(self, name: str, enable_logging: bool = True):
        self.logger = logging.getLogger(name)
        if not enable_logging:
            self.logger.disabled = True

    # Inputs
    def function_loaded(self, name: str, kind: str):
        """Log a parsed function spec"""
        message = f"📐 Loaded {BLUE}{name}{RESET} ({kind})"
        self.logger.info(message)

    def table_sampled(self, name: str, rows: int, failed: int):
        """Log a finished growth table"""
        color = GREEN if failed == 0 else ORANGE
        message = f"📈 Growth table of {BLUE}{name}{RESET}: {rows} rows, {color}{failed} flagged{RESET}"
        self.logger.info(message)

    # Scenario pipeline
    def scenario_start(self, scenario_id: str, theorem: str):
        """Log scenario start"""
        message = f"🧪 {GREEN}Running scenario{RESET} {BLUE}{scenario_id}{RESET} ({PURPLE}{theorem}{RESET})"
        self.logger.info(message)

    def measurement(self, name: str, value: float, band: tuple[float, float]):
        """Log one measured quantity with its band"""
        message = f"📏 {name} = {CYAN}{value:.4f}{RESET} [{band[0]:.4f}, {band[1]:.4f}]"
        self.logger.info(message)

    def verdict(self, verdict: Verdict):
        """Log a scenario verdict"""
        color = _OUTCOME_COLOR[verdict.outcome]
        emoji = "✅" if verdict.as_expected else "❌"
        message = f"{emoji} {BLUE}{verdict.scenario_id}{RESET}: {color}{verdict.outcome.value}{RESET}"
        if not verdict.as_expected:
            message += f" (expected {verdict.expected_outcome.value})"
        marginal = [c.name for c in (*verdict.hypotheses, *verdict.conclusions) if c.status is CheckStatus.MARGINAL]
        if marginal:
            message += f" {YELLOW}marginal: {', '.join(marginal)}{RESET}"
        self.logger.info(message)

    def summary_table(self, text: str):
        """Log the multi-line summary table"""
        self.logger.info("📊 %sSummary%s\n%s", GREEN, RESET, text)

    # File Output Logging
    def file_saved(self, file_type: str, path: str):
        """Log file saves with full paths"""
        emoji_map = {
            "growth_table": "📊",
            "estimate": "📏",
            "verdict": "📋",
            "chart": "📈",
            "error_record": "🚨",
        }
        emoji = emoji_map.get(file_type, "📁")
        message = f"{emoji} {GREEN}{file_type.replace('_', ' ').title()}{RESET} saved to: {CYAN}{path}{RESET}"
        self.logger.info(message)


# Convenience function to create colored logger
def get_colored_logger(name: str, enable_logging: bool = True) -> ColoredLogger:
    """Create a colored logger instance"""
    return ColoredLogger(name, enable_logging)
