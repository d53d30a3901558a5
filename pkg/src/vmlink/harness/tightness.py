"""Search below the free-vertex bound for instances with no doubly-good vertex."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any

from ..errors import TheoremViolation, UsageError
from ..linking import find_doubly_good_vertex, main_bound
from ..report import instance_record
from .generators import random_linking_instance


@dataclass
class TightnessReport:
    k: int
    l: int
    bound: int
    seed: int
    budget: int
    trials: dict[int, int] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def largest_failing_size(self) -> int | None:
        return max((f["free"] for f in self.failures), default=None)

    def record(self) -> dict[str, Any]:
        return {
            "record": "tightness",
            "k": self.k,
            "l": self.l,
            "bound": self.bound,
            "seed": self.seed,
            "budget": self.budget,
            "trials": {str(s): c for s, c in sorted(self.trials.items())},
            "largest_failing_size": self.largest_failing_size,
            "failures": self.failures,
            "violations": self.violations,
        }

    def to_text(self) -> str:
        return json.dumps(self.record(), sort_keys=True, ensure_ascii=False) + "\n"


def tightness_search(k: int, l: int, budget: int, seed: int = 0, max_witnesses: int = 20) -> TightnessReport:
    """Sample ``budget`` instances with κ targets (k, l) and |F| from 1 up to the bound.

    Sizes are cycled round-robin. An instance with no doubly-good vertex
    below the bound is recorded as a failure witness (graph6 + masks);
    sizes at the bound are included as a sanity check, and any miss there
    is recorded as a violation.
    """
    if k < 0 or l < 0 or budget < 0:
        raise UsageError("k, l and budget must be non-negative")
    bound = main_bound(k, l)
    if bound > 48:
        raise UsageError(f"bound {bound} too large for desk-scale search")
    rep = TightnessReport(k, l, bound, seed, budget)
    sizes = list(range(1, bound + 1))
    for i in range(budget):
        size = sizes[i % len(sizes)]
        rng = random.Random(f"tightness:{seed}:{i}")
        inst = random_linking_instance(rng, k, l, size)
        rep.trials[size] = rep.trials.get(size, 0) + 1
        try:
            found = find_doubly_good_vertex(inst)
        except TheoremViolation as exc:
            rep.violations.append(exc.report)
            continue
        if found is None and len(rep.failures) < max_witnesses:
            rep.failures.append({"free": size, "instance": instance_record(inst.g, **inst.masks())})
    return rep
