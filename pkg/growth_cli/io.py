"""Atomic file output and the machine-readable error record."""

from __future__ import annotations

import contextlib
import json
import os
import tempfile
from collections.abc import Mapping
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1
ERROR_FILE = "error.json"


def write_text_atomic(path: Path, text: str) -> Path:
    """Write ``text`` to a temporary file beside ``path``, then rename it over."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise
    return path


def write_json_atomic(path: Path, payload: Mapping[str, Any]) -> Path:
    return write_text_atomic(path, json.dumps(payload, indent=2) + "\n")


def error_record(error: BaseException, exit_code: int) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "error": type(error).__name__,
        "message": str(error),
        "exit_code": exit_code,
    }


def write_error_record(out_dir: Path, error: BaseException, exit_code: int) -> Path | None:
    """Best-effort ``error.json``; an unwritable directory yields None."""
    try:
        return write_json_atomic(out_dir / ERROR_FILE, error_record(error, exit_code))
    except OSError:
        return None
