"""Graph and instance sources for the verification sweeps."""

from __future__ import annotations

import random
from pathlib import Path
from typing import Iterator

from ..errors import UsageError
from ..graph import Graph
from ..graph6 import decode
from ..linking import LinkingInstance, main_bound
from ..rankconn import kappa

MAX_EXHAUSTIVE = 9


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labelled simple graphs on ``n`` vertices, by edge mask."""
    if not (0 <= n <= MAX_EXHAUSTIVE):
        raise UsageError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE}")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_edge_mask(n, mask)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    pairs = n * (n - 1) // 2
    mask = 0
    for k in range(pairs):
        if rng.random() < p:
            mask |= 1 << k
    return Graph.from_edge_mask(n, mask)


def graphs_from_file(path: str | Path) -> Iterator[Graph]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield decode(line)


def random_disjoint_pair(rng: random.Random, vertices: int, p: float = 1 / 3) -> tuple[int, int]:
    s = t = 0
    m = vertices
    while m:
        low = m & -m
        x = rng.random()
        if x < p:
            s |= low
        elif x < 2 * p:
            t |= low
        m ^= low
    return s, t


def random_linking_instance(
    rng: random.Random,
    k: int,
    l: int,
    free_size: int,
    max_tries: int = 10_000,
) -> LinkingInstance:
    """Random instance with κ(q, r) = k, κ(s, t) = l and exactly ``free_size`` free vertices.

    Terminal sets get sizes near their targets; the graph is redrawn until
    both connectivities certify.
    """
    for _ in range(max_tries):
        sizes = [rng.choice(_sizes_for(k)), rng.choice(_sizes_for(k)),
                 rng.choice(_sizes_for(l)), rng.choice(_sizes_for(l))]
        ids = list(range(sum(sizes)))
        rng.shuffle(ids)
        q_ids = ids[:sizes[0]]
        r_ids = ids[sizes[0]:sizes[0] + sizes[1]]
        rest = ids[sizes[0] + sizes[1]:]
        # s and t may reuse q/r vertices; the unused ones become new terminals
        pool_st = rest + [v for v in q_ids + r_ids if rng.random() < 0.25]
        rng.shuffle(pool_st)
        s_ids = pool_st[:sizes[2]]
        t_ids = [v for v in pool_st[sizes[2]:] if v not in s_ids][:sizes[3]]
        used = set(q_ids) | set(r_ids) | set(s_ids) | set(t_ids)
        relabel = {v: i for i, v in enumerate(sorted(used))}
        n = len(used) + free_size
        if n > 64:
            raise UsageError("instance would exceed 64 vertices")
        g = random_graph(rng, n, rng.uniform(0.15, 0.6))
        q = sum(1 << relabel[v] for v in q_ids)
        r = sum(1 << relabel[v] for v in r_ids)
        s = sum(1 << relabel[v] for v in s_ids)
        t = sum(1 << relabel[v] for v in t_ids)
        if kappa(g, q, r).value != k or kappa(g, s, t).value != l:
            continue
        inst = LinkingInstance(g, q, r, s, t)
        if inst.free.bit_count() == free_size:
            return inst
    raise UsageError(f"no instance with k={k}, l={l}, |F|={free_size} in {max_tries} tries")


def _sizes_for(target: int) -> list[int]:
    return [0, 1, 2] if target == 0 else [target, target, target + 1]


def at_bound_instance(rng: random.Random, k: int, l: int) -> LinkingInstance:
    return random_linking_instance(rng, k, l, main_bound(k, l))
