"""Built-in scenarios, loaded from the JSON documents in ``catalog/``."""

from __future__ import annotations

import json
import logging
from importlib import resources
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from punctured_functions import SchemaError

from .models import Scenario

logger = logging.getLogger(__name__)

BUILTIN_IDS = (
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "thm5",
    "thm6",
    "thm7",
    "lemma5",
    "lemma6",
    "lemma16",
    "control_t1",
    "control_t6",
)


def _parse(text: str, origin: str) -> Scenario:
    try:
        return Scenario.model_validate_json(text)
    except ValidationError as exc:
        error = exc.errors()[0]
        message = f"invalid scenario document {origin}: {error['msg']} at {error['loc']}"
        raise SchemaError(message) from exc


def load_scenario(path: str | Path) -> Scenario:
    """Read a scenario document from disk.

    Raises:
        SchemaError: unreadable file or invalid document.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        message = f"cannot read scenario {path}: {exc}"
        raise SchemaError(message) from exc
    return _parse(text, str(path))


def builtin_document(scenario_id: str) -> dict[str, Any]:
    """Raw JSON document of a built-in scenario."""
    if scenario_id not in BUILTIN_IDS:
        message = f"unknown scenario {scenario_id!r}; known: {list(BUILTIN_IDS)}"
        raise SchemaError(message)
    text = resources.files("theorem_verifier").joinpath("catalog", f"{scenario_id}.json").read_text(encoding="utf-8")
    return json.loads(text)


def builtin_scenario(scenario_id: str) -> Scenario:
    document = builtin_document(scenario_id)
    return _parse(json.dumps(document), f"catalog:{scenario_id}")


def builtin_scenarios() -> list[Scenario]:
    """Every built-in scenario: one satisfying case per theorem and lemma, plus two controls."""
    scenarios = [builtin_scenario(sid) for sid in BUILTIN_IDS]
    logger.debug("loaded %d built-in scenarios", len(scenarios))
    return scenarios


def select_scenarios(selection: str | list[str]) -> list[Scenario]:
    """Resolve ``"all"``, an id, a comma list or a path to a scenario document."""
    names = selection if isinstance(selection, list) else [s.strip() for s in selection.split(",") if s.strip()]
    if names == ["all"]:
        return builtin_scenarios()
    chosen = []
    for name in names:
        if name.endswith(".json"):
            chosen.append(load_scenario(name))
        else:
            chosen.append(builtin_scenario(name))
    return chosen
