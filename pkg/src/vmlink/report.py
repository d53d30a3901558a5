"""JSON-ready records for instances and theorem-violation reports."""

from __future__ import annotations

from typing import Any

from .graph import Graph, members
from .graph6 import encode


def mask_hex(mask: int) -> str:
    return f"{mask:#x}"


def set_record(mask: int) -> dict[str, Any]:
    return {"ids": members(mask), "mask": mask_hex(mask)}


def instance_record(g: Graph, **sets: int) -> dict[str, Any]:
    """graph6 of ``g`` plus each named vertex set as a hex mask.

    graph6 compacts ids, so the id mask of present vertices is kept too.
    """
    rec: dict[str, Any] = {"graph6": encode(g), "n": g.n, "vertices": mask_hex(g.vertices)}
    for name, m in sets.items():
        rec[name] = mask_hex(m)
    return rec


def violation_report(operation: str, g: Graph, expected: Any, observed: Any, **sets: int) -> dict[str, Any]:
    return {
        "operation": operation,
        "instance": instance_record(g, **sets),
        "expected": expected,
        "observed": observed,
    }
