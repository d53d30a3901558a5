"""Cut-rank, connectivity between vertex sets, and the half-integer local connectivity.

All vertex sets are int bitmasks over the host graph's ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import UsageError
from .gf2 import rank_rows
from .graph import Graph, iter_bits


@dataclass(frozen=True, order=True)
class HalfInt:
    """Exact half-integer stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, value: int) -> HalfInt:
        return cls(2 * value)

    def __add__(self, other: HalfInt) -> HalfInt:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.twice_value + other.twice_value)

    def __sub__(self, other: HalfInt) -> HalfInt:
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.twice_value - other.twice_value)

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __str__(self) -> str:
        if self.twice_value % 2 == 0:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


HALF = HalfInt(1)


class KappaResult(NamedTuple):
    value: int
    witness: int


def _check_subset(g: Graph, x: int, name: str) -> None:
    if x < 0 or x & ~g.vertices:
        raise UsageError(f"{name} contains vertices not in the graph")


def _check_pair(g: Graph, s: int, t: int) -> None:
    _check_subset(g, s, "s")
    _check_subset(g, t, "t")
    if s & t:
        raise UsageError("terminal sets overlap")


def _rank_between(adj: tuple[int, ...], rows: int, cols: int) -> int:
    # rank A[rows, cols] = rank A[cols, rows]; eliminate over the shorter side
    if rows.bit_count() > cols.bit_count():
        rows, cols = cols, rows
    return rank_rows(adj[v] & cols for v in iter_bits(rows))


def cut_rank(g: Graph, x: int) -> int:
    _check_subset(g, x, "x")
    return _rank_between(g.adj, x, g.vertices & ~x)


def kappa(g: Graph, s: int, t: int) -> KappaResult:
    """Minimum cut-rank over all X with s ⊆ X ⊆ V - t, plus a witness.

    Depth-first branch and bound over the free vertices in descending id
    order, excluding before including, so completions are visited in
    increasing bitmask order. A partial assignment (In, Out, U unassigned)
    is bounded below by rank A[In, Out ∪ t]: every completion contains that
    submatrix after deleting the unassigned vertices, and deletion never
    raises cut-rank. The first minimizer reached is therefore the one with
    the numerically smallest mask.
    """
    _check_pair(g, s, t)
    adj = g.adj
    verts = g.vertices
    order = sorted(iter_bits(verts & ~s & ~t), reverse=True)
    depth = len(order)
    best_val = depth + s.bit_count() + 1
    best_x = s
    root_lb = _rank_between(adj, s, t)

    def search(i: int, x_in: int, unassigned: int) -> None:
        nonlocal best_val, best_x
        lb = _rank_between(adj, x_in, verts & ~x_in & ~unassigned)
        if lb >= best_val:
            return
        if i == depth:
            best_val, best_x = lb, x_in
            return
        b = 1 << order[i]
        rest = unassigned & ~b
        search(i + 1, x_in, rest)
        if best_val > root_lb:
            search(i + 1, x_in | b, rest)

    search(0, s, verts & ~s & ~t)
    return KappaResult(best_val, best_x)


def kappa_bruteforce(g: Graph, s: int, t: int) -> KappaResult:
    """Same contract as :func:`kappa`, by plain enumeration of every admissible X."""
    _check_pair(g, s, t)
    free = g.vertices & ~s & ~t
    best_val, best_x = None, None
    sub = 0
    while True:
        val = cut_rank(g, s | sub)
        if best_val is None or val < best_val:
            best_val, best_x = val, s | sub
        if sub == free:
            break
        sub = (sub - free) & free
    return KappaResult(best_val, best_x)


def local_conn(g: Graph, s: int, t: int) -> HalfInt:
    """½(ρ(s) + ρ(t) − ρ(s ∪ t)) as an exact half-integer."""
    _check_pair(g, s, t)
    return HalfInt(cut_rank(g, s) + cut_rank(g, t) - cut_rank(g, s | t))


def is_separating(g: Graph, s: int, t: int, x: int, k: int) -> bool:
    """Whether s ⊆ x ⊆ V - t and ρ(x) = k."""
    if x & ~g.vertices or s & ~x or x & t:
        return False
    return cut_rank(g, x) == k


def shrink_terminals(g: Graph, s: int, t: int) -> tuple[int, int]:
    """Subsets s1 ⊆ s, t1 ⊆ t with |s1| = |t1| = κ(s1, t1) = κ(s, t).

    X ↦ κ(X, t) is a matroid rank function on V - t, so growing s1 greedily
    (ascending ids, keep a vertex when it raises κ) yields a basis of s.
    The same greedy then picks t1 inside t against s1.
    """
    _check_pair(g, s, t)
    target = kappa(g, s, t).value

    def greedy(pool: int, other: int) -> int:
        chosen, cur = 0, 0
        for v in iter_bits(pool):
            if cur == target:
                break
            val = kappa(g, chosen | (1 << v), other).value
            if val > cur:
                chosen |= 1 << v
                cur = val
        return chosen

    s1 = greedy(s, t)
    t1 = greedy(t, s1)
    return s1, t1


# Table-based evaluation, used by the verification sweeps on small graphs.

def cut_rank_table(g: Graph) -> np.ndarray:
    """ρ(X ∩ V) for every mask X over ids ``0..n-1``, as an int array of length 2**n."""
    n = g.n
    verts = g.vertices
    adj = g.adj
    vals = np.zeros(1 << n, dtype=np.int16)
    sub = 0
    while True:
        comp = verts & ~sub
        if sub <= comp:
            r = _rank_between(adj, sub, comp)
            vals[sub] = r
            vals[comp] = r
        if sub == verts:
            break
        sub = (sub - verts) & verts
    if verts != (1 << n) - 1:
        vals = vals[np.arange(1 << n) & verts]
    return vals


_BIG = np.int16(1 << 12)


def connectivity_table(table: np.ndarray, n: int, forbidden: int = 0) -> np.ndarray:
    """κ(s, t) for all mask pairs from a cut-rank table: result[s, t].

    Entries are meaningful for disjoint ``s``, ``t`` avoiding ``forbidden``;
    X ranges over sets that avoid ``t | forbidden``.
    """
    size = 1 << n
    idx = np.arange(size)
    base = np.where((idx[:, None] & (idx[None, :] | forbidden)) == 0, table[:, None], _BIG)
    # base[X, t]; superset-minimum over X, one bit at a time
    for b in range(n):
        step = 1 << b
        low = idx[(idx & step) == 0]
        base[low] = np.minimum(base[low], base[low | step])
    return base


def kappa_from_table(table: np.ndarray, s: int, t: int, vertices: int) -> int:
    idx = np.arange(len(table))
    blocked = t | ((len(table) - 1) & ~vertices)
    ok = ((idx & s) == s) & ((idx & blocked) == 0)
    return int(table[ok].min())
