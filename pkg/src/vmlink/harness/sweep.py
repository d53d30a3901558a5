"""Sweep specifications, the runner, and the line-delimited report format."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Union

from ..errors import UsageError
from ..graph import MAX_VERTICES, Graph
from .generators import MAX_EXHAUSTIVE, enumerate_graphs, graphs_from_file, random_graph
from .properties import Case, Violation, get_property


@dataclass(frozen=True)
class Exhaustive:
    """Every labelled graph on ``n`` vertices (or on each of ``n_min..n``)."""

    n: int
    n_min: int | None = None

    def graphs(self, seed: int) -> Iterator[Graph]:
        for m in range(self.n if self.n_min is None else self.n_min, self.n + 1):
            yield from enumerate_graphs(m)

    def describe(self) -> dict[str, Any]:
        return {"kind": "exhaustive", "n": self.n, "n_min": self.n_min}


@dataclass(frozen=True)
class Random:
    """``count`` G(n, p) graphs; ``n`` drawn from ``n_min..n`` and ``p`` uniform when None."""

    n: int
    p: float | None
    count: int
    n_min: int | None = None

    def graphs(self, seed: int) -> Iterator[Graph]:
        lo = self.n if self.n_min is None else self.n_min
        for i in range(self.count):
            rng = random.Random(f"graph:{seed}:{i}")
            n = rng.randint(lo, self.n)
            p = rng.random() if self.p is None else self.p
            yield random_graph(rng, n, p)

    def describe(self) -> dict[str, Any]:
        return {"kind": "random", "n": self.n, "n_min": self.n_min, "p": self.p, "count": self.count}


@dataclass(frozen=True)
class FromFile:
    path: str

    def graphs(self, seed: int) -> Iterator[Graph]:
        try:
            yield from graphs_from_file(self.path)
        except OSError as exc:
            raise UsageError(f"cannot read {self.path}: {exc}") from exc

    def describe(self) -> dict[str, Any]:
        return {"kind": "file", "path": self.path}


Generator = Union[Exhaustive, Random, FromFile]


@dataclass(frozen=True)
class SweepSpec:
    generator: Generator
    property: str
    seed: int = 0
    cap: int | None = -1  # -1: the property's default cap; None: no cap

    def __post_init__(self):
        get_property(self.property)
        gen = self.generator
        if isinstance(gen, Exhaustive) and not (0 <= gen.n <= MAX_EXHAUSTIVE):
            raise UsageError(f"exhaustive sweeps need n <= {MAX_EXHAUSTIVE}")
        if isinstance(gen, Random):
            if not (0 <= gen.n <= MAX_VERTICES) or (gen.n_min is not None and gen.n_min > gen.n):
                raise UsageError(f"random sweeps need 0 <= n_min <= n <= {MAX_VERTICES}")
            if gen.p is not None and not (0.0 <= gen.p <= 1.0):
                raise UsageError("edge probability must lie in [0, 1]")
            if gen.count < 0:
                raise UsageError("count must be non-negative")

    def effective_cap(self) -> int | None:
        return get_property(self.property).default_cap if self.cap == -1 else self.cap


@dataclass
class SweepReport:
    property: str
    generator: dict[str, Any]
    seed: int
    cap: int | None
    graphs: int = 0
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> dict[str, Any]:
        return {
            "record": "summary",
            "property": self.property,
            "generator": self.generator,
            "seed": self.seed,
            "cap": self.cap,
            "graphs": self.graphs,
            "checked": self.checked,
            "violations": len(self.violations),
            "passed": self.passed,
        }

    def body_lines(self) -> list[str]:
        """Violations (sorted) then the summary; timing excluded so reruns compare byte for byte."""
        lines = [json.dumps(v.record(), sort_keys=True, ensure_ascii=False)
                 for v in sorted(self.violations, key=Violation.sort_key)]
        lines.append(json.dumps(self.summary(), sort_keys=True, ensure_ascii=False))
        return lines

    def to_text(self, timing: bool = False) -> str:
        lines = self.body_lines()
        if timing:
            lines.append(json.dumps({"record": "timing", "wall_time": round(self.wall_time, 3)}))
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path, timing: bool = True) -> None:
        Path(path).write_text(self.to_text(timing=timing), encoding="utf-8")


def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"case:{seed}:{index}")


def run_sweep(spec: SweepSpec) -> SweepReport:
    prop = get_property(spec.property)
    cap = spec.effective_cap()
    report = SweepReport(spec.property, spec.generator.describe(), spec.seed, cap)
    start = time.perf_counter()
    for i, g in enumerate(spec.generator.graphs(spec.seed)):
        checked, found = prop.check(Case(g, case_rng(spec.seed, i), cap))
        report.graphs += 1
        report.checked += checked
        report.violations.extend(found)
    report.violations.sort(key=Violation.sort_key)
    report.wall_time = time.perf_counter() - start
    return report


def read_report(path: str | Path) -> list[dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
