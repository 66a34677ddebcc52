"""Structure of the JSON reports the CLI emits, and a validator for them.

The shipped schema (schema/report.schema.json) documents the format; the
validator here enforces the same constraints without external dependencies.
"""

from __future__ import annotations

from importlib import resources
from typing import Any

AXIOM_ROW_KEYS = {"model_n": int, "axiom": str, "holds": bool,
                  "max_residual": float}


class ReportError(ValueError):
    """The report does not follow the shipped schema."""


def schema_text() -> str:
    return (resources.files("zxr") / "schema" / "report.schema.json").read_text()


def validate_report(obj: Any) -> None:
    """Raise ReportError unless obj is a well-formed report."""
    if not isinstance(obj, dict):
        raise ReportError("report must be an object")
    suite = obj.get("suite")
    if not isinstance(suite, str):
        raise ReportError("missing suite name")
    if not isinstance(obj.get("ok"), bool):
        raise ReportError("missing boolean verdict 'ok'")
    if suite in ("axioms", "independence"):
        rows = obj.get("rows")
        if not isinstance(rows, list) or not rows:
            raise ReportError("axiom report needs a non-empty 'rows' list")
        for row in rows:
            for key, typ in AXIOM_ROW_KEYS.items():
                if key not in row:
                    raise ReportError(f"row missing {key!r}")
                value = row[key]
                if typ is float:
                    if not isinstance(value, (int, float)):
                        raise ReportError(f"{key!r} must be numeric")
                elif not isinstance(value, typ):
                    raise ReportError(f"{key!r} must be {typ.__name__}")
    elif suite in ("fixpoint", "vdn"):
        if not isinstance(obj.get("checks"), int):
            raise ReportError("graph sweep report needs an integer 'checks'")
        if not isinstance(obj.get("failures"), list):
            raise ReportError("graph sweep report needs a 'failures' list")
    elif suite == "check-equal":
        if not isinstance(obj.get("equal"), bool):
            raise ReportError("check-equal report needs a boolean 'equal'")
    else:
        raise ReportError(f"unknown suite {suite!r}")
