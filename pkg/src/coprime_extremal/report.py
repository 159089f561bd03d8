"""Run reports: JSON/CSV encoding, the published schema, and the on-disk cache."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .intset import IntSet

log = logging.getLogger(__name__)

CACHE_ENV = "COPRIME_CACHE_DIR"

RATIONAL_SCHEMA = {
    "type": "object",
    "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "minimum": 1}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "RunReport",
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "result": {"type": "object"},
        "runtime_ms": {"type": "integer", "minimum": 0},
        "cache_hit": {"type": "boolean"},
        "tool_version": {"type": "string"},
    },
    "required": ["command", "parameters", "result", "runtime_ms", "cache_hit", "tool_version"],
    "additionalProperties": False,
    "$defs": {"rational": RATIONAL_SCHEMA},
}


def to_jsonable(value: Any) -> Any:
    """Exact payload encoding: fractions become ``{"num", "den"}``, sets become sorted lists."""
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, IntSet):
        return value.members()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"cannot encode {type(value).__name__}")


def from_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value) == {"num", "den"} and all(isinstance(v, int) for v in value.values()):
            return Fraction(value["num"], value["den"])
        return {k: from_jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [from_jsonable(v) for v in value]
    return value


@dataclass
class RunReport:
    command: str
    parameters: dict
    result: dict
    runtime_ms: int = 0
    cache_hit: bool = False
    tool_version: str = __version__
    rows: list[dict] | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": to_jsonable(self.parameters),
            "result": to_jsonable(self.result),
            "runtime_ms": int(self.runtime_ms),
            "cache_hit": bool(self.cache_hit),
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> RunReport:
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            result=from_jsonable(data["result"]),
            runtime_ms=data["runtime_ms"],
            cache_hit=data["cache_hit"],
            tool_version=data["tool_version"],
        )

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """Header plus one row per tabulated entry, or one row of scalar result fields."""
        rows = self.rows
        if rows is None:
            flat = to_jsonable(self.result)
            rows = [{k: v for k, v in flat.items() if _is_rational(v) or not isinstance(v, (dict, list))}]
        rows = [to_jsonable(r) for r in rows]
        buf = io.StringIO()
        header = list(rows[0]) if rows else []
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _csv_cell(v) for k, v in r.items()})
        return buf.getvalue()


def _is_rational(v: Any) -> bool:
    return isinstance(v, dict) and set(v) == {"num", "den"}


def _csv_cell(v: Any) -> Any:
    if _is_rational(v):
        return f"{v['num']}/{v['den']}"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def validate_report(data: dict) -> None:
    import jsonschema

    jsonschema.validate(data, REPORT_SCHEMA)


# ---- cache -------------------------------------------------------------


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path.cwd() / ".cache")


def request_key(payload: dict) -> str:
    text = json.dumps(to_jsonable(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def cache_lookup(key: str, directory: Path | None = None) -> RunReport | None:
    path = (directory or cache_dir()) / f"{key}.json"
    if not path.exists():
        return None
    try:
        report = RunReport.from_json(path.read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable cache entry %s: %s", path, exc)
        return None
    if report.tool_version != __version__:
        return None
    return report


def cache_store(key: str, report: RunReport, directory: Path | None = None) -> bool:
    directory = directory or cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        os.replace(tmp, directory / f"{key}.json")
    except OSError as exc:
        log.warning("cache directory %s is not writable, continuing uncached: %s", directory, exc)
        return False
    return True
