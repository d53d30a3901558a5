"""
Sweeps, reports and the search below the bound
===============================================

Every lemma is registered as a property that a sweep checks on a stream of
graphs. Reports are JSON lines: violations first, then a summary. Reruns
with the same seed reproduce the same body byte for byte.
"""

from __future__ import annotations

from vmlink.harness import Exhaustive, Random, SweepSpec, run_sweep, tightness_search

rep = run_sweep(SweepSpec(Exhaustive(5), "subeq"))
print(rep.to_text(), end="")

rep = run_sweep(SweepSpec(Random(8, None, 50, n_min=4), "joint-option-nonempty", seed=1))
print(rep.to_text(timing=True), end="")

# With k = l = 1 the guarantee needs 12 free vertices. Below that the search
# keeps instances where no free vertex is doubly good. (When k or l is 0 one
# pair is preserved for free, so a miss cannot happen at any size.) Whether
# the bound is optimal is open; an empty witness list is data, not a proof.
tight = tightness_search(1, 1, budget=120, seed=0, max_witnesses=3)
print("trials per |F|:", tight.trials)
print("largest |F| without a doubly-good vertex:", tight.largest_failing_size)
for w in tight.failures:
    print("  witness", w["free"], w["instance"]["graph6"])
