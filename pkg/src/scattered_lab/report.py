"""Versioned JSON reports.

Everything outside the ``run`` block is a pure function of the inputs, so two
runs with the same configuration produce identical bytes once ``run`` is
dropped.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from functools import lru_cache
from importlib import resources

import numpy as np

from . import __version__
from ._accel import backend
from .gf import Field

SCHEMA_ID = "scattered-lab/v1"

EXIT_OK, EXIT_CLAIM_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 2, 3, 4
STATUS = {EXIT_OK: "pass", EXIT_CLAIM_FAIL: "fail", EXIT_CONFIG: "error", EXIT_BUDGET: "budget"}


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("scattered_lab").joinpath("schema/report-v1.json").read_text()
    return json.loads(text)


def field_json(F: Field | None) -> dict | None:
    if F is None:
        return None
    return {"p": F.p, "e": F.e, "n": F.n, "q": F.q, "mu": [int(c) for c in F.mu]}


def coverage_json(complete: bool, scanned: int, total: int, token: str | None) -> dict:
    return {"complete": bool(complete), "scanned": int(scanned), "total": int(total), "resume_token": token}


def build(command: str, F: Field | None, params: dict, result: dict, exit_code: int,
          coverage: dict | None = None, elapsed: float = 0.0) -> dict:
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "field": field_json(F),
        "params": params,
        "status": STATUS[exit_code],
        "exit_code": exit_code,
        "result": result,
        "coverage": coverage,
        "run": {
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "elapsed_s": round(float(elapsed), 3),
            "backend": backend(),
            "version": __version__,
        },
    }


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not conform."""
    import jsonschema

    jsonschema.validate(report, schema())


def _plain(obj):
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_plain) + "\n"


def stable_view(report: dict) -> dict:
    """The report without its volatile ``run`` block."""
    return {k: v for k, v in report.items() if k != "run"}
