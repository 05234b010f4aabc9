"""Structured reports for the command-line tools.

Reports are plain dictionaries built only from strings, integers, booleans,
lists and dicts, so that JSON output is byte-for-byte reproducible.  Rational
numbers are written as strings (``"-2"``, ``"1/2"``).  The ``generated_at``
field is the only volatile entry; ``stable_view`` drops it.
"""

from __future__ import annotations

import json
import math
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping

from . import __version__
from .algebra import FreeCDGA, format_poly

SCHEMA_ID = "mapspace-report/1"
VOLATILE = ("generated_at",)


def rational(x) -> str:
    return str(Fraction(x))


def count(x) -> int | str:
    """Integers stay integers; an infinite value becomes ``"infinity"``."""
    return "infinity" if x == math.inf else int(x)


def poly(p: Mapping, names) -> dict:
    terms = [{"coef": rational(c), "factors": [names[i] for i in m]}
             for m, c in sorted(p.items(), key=lambda t: (len(t[0]), t[0]))]
    return {"text": format_poly(p, names), "terms": terms}


def generator_table(A: FreeCDGA) -> list[dict]:
    return [{"name": A.names[g], "degree": A.degs[g], "differential": poly(A.d_gen.get(g, {}), A.names)}
            for g in range(len(A.degs))]


def rank_table(ranks) -> dict[str, int]:
    """Nonzero ranks keyed by degree (JSON keys are strings)."""
    items = ranks.items() if isinstance(ranks, Mapping) else enumerate(ranks)
    return {str(n): int(r) for n, r in sorted(items) if r}


def envelope(command: str, inputs: dict, result: dict, warnings=(), status: str = "ok") -> dict:
    return {
        "schema": SCHEMA_ID,
        "tool_version": __version__,
        "command": command,
        "status": status,
        "inputs": inputs,
        "warnings": list(warnings),
        "result": result,
        "generated_at": datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
    }


def stable_view(report: dict) -> dict:
    return {k: v for k, v in report.items() if k not in VOLATILE}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files(__package__).joinpath("schema", "report-v1.json").read_text(encoding="utf-8")
    return json.loads(text)


# -- plain text --------------------------------------------------------------------


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_table(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, dict) for r in v)


def _render(v: Any, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(v, dict):
        if set(v) == {"text", "terms"}:
            out[-1] += " " + v["text"]
            return
        for k, x in v.items():
            if isinstance(x, (dict, list)) and x and not (isinstance(x, dict) and set(x) == {"text", "terms"}):
                if isinstance(x, list) and not _is_table(x):
                    out.append(f"{pad}{k}: " + ", ".join(_scalar(i) for i in x))
                else:
                    out.append(f"{pad}{k}:")
                    _render(x, indent + 1, out)
            elif isinstance(x, dict) and x:
                out.append(f"{pad}{k}:")
                _render(x, indent, out)
            else:
                out.append(f"{pad}{k}: {_scalar(x) if x != [] and x != {} else '-'}")
    elif _is_table(v):
        for row in v:
            if "name" in row and "degree" in row:
                line = f"{pad}{row['name']}  (degree {row['degree']})"
                d = row.get("differential")
                if isinstance(d, dict) and d.get("terms"):
                    line += f"  d = {d['text']}"
                elif isinstance(d, str) and d != "0":
                    line += f"  d = {d}"
                out.append(line)
                rest = {k: x for k, x in row.items() if k not in ("name", "degree", "differential")}
                if rest:
                    _render(rest, indent + 1, out)
            else:
                out.append(f"{pad}-")
                _render(row, indent + 1, out)
    else:
        out.append(pad + _scalar(v))


def to_text(report: dict) -> str:
    out = [f"{report['command']}: {report['status']}"]
    for w in report.get("warnings", []):
        out.append(f"warning: {w}")
    if report.get("inputs"):
        out.append("inputs:")
        _render(report["inputs"], 1, out)
    _render(report["result"], 0, out)
    return "\n".join(out) + "\n"
