"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class UsageError(ValueError):
    """Bad arguments: out-of-range vertex, overlapping terminal sets, malformed input."""


class PreconditionError(UsageError):
    """An operation was called outside its domain (e.g. pivoting a non-edge)."""


class TheoremViolation(Exception):
    """A guaranteed combinatorial statement failed on a concrete instance.

    ``report`` is a JSON-serializable dict with keys ``operation``,
    ``instance`` (graph6 plus vertex-set masks in hex), ``expected`` and
    ``observed``. Never expected to be raised; if it is, the report is a
    reproducible counterexample.
    """

    def __init__(self, report: dict[str, Any]):
        self.report = report
        super().__init__(f"{report.get('operation')}: expected {report.get('expected')}, "
                         f"observed {report.get('observed')}")
