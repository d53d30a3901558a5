"""Simple graphs on stable vertex ids and the vertex-minor operations.

A graph is an immutable value: ``adj[v]`` is the neighbourhood bitmask of
``v`` and ``vertices`` is the bitmask of ids still present. Deleting a vertex
clears its bit but never renumbers the others, so vertex sets (plain int
masks) stay meaningful across reductions.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import PreconditionError, UsageError

MAX_VERTICES = 64
DEFAULT_ORBIT_BUDGET = 2_000_000

# Re-validate every graph built by an operation. Off by default: the harness
# builds millions of graphs.
CHECK_INVARIANTS = bool(os.environ.get("VMLINK_CHECK_INVARIANTS"))


def bit(v: int) -> int:
    return 1 << v


def vertex_mask(ids: Iterable[int]) -> int:
    m = 0
    for v in ids:
        if not (0 <= v < MAX_VERTICES):
            raise UsageError(f"vertex id {v} out of range")
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Ids in ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``n`` is the id bound (ids are ``0..n-1``); ``vertices`` marks which of
    them are present. ``order`` is the number of present vertices.
    """

    adj: tuple[int, ...]
    vertices: int

    def __post_init__(self):
        check_invariants(self)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def order(self) -> int:
        return self.vertices.bit_count()

    def __len__(self) -> int:
        return self.vertices.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < len(self.adj) and bool((self.vertices >> v) & 1)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, vertices={members(self.vertices)}, edges={self.edges()})"

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls((0,) * n, (1 << n) - 1)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not (0 <= n <= MAX_VERTICES):
            raise UsageError(f"at most {MAX_VERTICES} vertices supported, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise UsageError(f"loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj), (1 << n) - 1)

    @classmethod
    def from_edge_mask(cls, n: int, edge_mask: int) -> Graph:
        """Graph whose edge set is read from ``edge_mask`` in lexicographic pair order."""
        adj = [0] * n
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                if (edge_mask >> k) & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k += 1
        return cls(tuple(adj), (1 << n) - 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in iter_bits(self.vertices) for v in iter_bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and bool((self.adj[u] >> v) & 1)

    def key(self) -> tuple[int, ...]:
        """Hashable canonical encoding for a fixed vertex-id set."""
        return self.adj


def check_invariants(g: Graph) -> None:
    n = len(g.adj)
    if n > MAX_VERTICES:
        raise UsageError(f"at most {MAX_VERTICES} vertices supported, got {n}")
    verts = g.vertices
    if verts < 0 or verts >> n:
        raise UsageError("vertex mask has ids beyond n")
    for v, row in enumerate(g.adj):
        if (row >> v) & 1:
            raise UsageError(f"loop at vertex {v}")
        if row & ~verts:
            raise UsageError(f"vertex {v} adjacent to a missing vertex")
        if row and not (verts >> v) & 1:
            raise UsageError(f"missing vertex {v} has neighbours")
        r = row
        while r:
            low = r & -r
            u = low.bit_length() - 1
            if not (g.adj[u] >> v) & 1:
                raise UsageError(f"asymmetric adjacency between {v} and {u}")
            r ^= low


def _make(adj: list[int] | tuple[int, ...], vertices: int) -> Graph:
    # Trusted constructor for operation results.
    g = object.__new__(Graph)
    object.__setattr__(g, "adj", tuple(adj))
    object.__setattr__(g, "vertices", vertices)
    if CHECK_INVARIANTS:
        check_invariants(g)
    return g


def _require_vertex(g: Graph, v: int) -> None:
    if not (0 <= v < len(g.adj)) or not (g.vertices >> v) & 1:
        raise UsageError(f"vertex {v} is not in the graph")


def neighbors(g: Graph, v: int) -> int:
    _require_vertex(g, v)
    return g.adj[v]


def _lc_rows(adj: list[int], v: int) -> None:
    nb = adj[v]
    r = nb
    while r:
        low = r & -r
        x = low.bit_length() - 1
        adj[x] ^= nb ^ low
        r ^= low


def local_complement(g: Graph, v: int) -> Graph:
    """G*v: complement the subgraph induced on the neighbourhood of ``v``."""
    _require_vertex(g, v)
    adj = list(g.adj)
    _lc_rows(adj, v)
    return _make(adj, g.vertices)


def pivot(g: Graph, u: int, v: int) -> Graph:
    """G∧uv = G*u*v*u, defined only when uv is an edge."""
    _require_vertex(g, u)
    _require_vertex(g, v)
    if not (g.adj[u] >> v) & 1:
        raise PreconditionError(f"pivot needs an edge, {u}{v} is not one")
    adj = list(g.adj)
    _lc_rows(adj, u)
    _lc_rows(adj, v)
    _lc_rows(adj, u)
    return _make(adj, g.vertices)


def delete(g: Graph, v: int) -> Graph:
    _require_vertex(g, v)
    adj = list(g.adj)
    b = 1 << v
    r = adj[v]
    while r:
        low = r & -r
        adj[low.bit_length() - 1] ^= b
        r ^= low
    adj[v] = 0
    return _make(adj, g.vertices & ~b)


def delete_set(g: Graph, xs: int) -> Graph:
    if xs & ~g.vertices:
        raise UsageError("cannot delete vertices that are not present")
    keep = ~xs
    adj = [row & keep for row in g.adj]
    for v in iter_bits(xs):
        adj[v] = 0
    return _make(adj, g.vertices & keep)


def induced(g: Graph, xs: int) -> Graph:
    return delete_set(g, g.vertices & ~xs)


class Reduction(enum.Enum):
    """The three one-vertex reductions G∖v, G*v∖v and G/v."""

    DELETE = "delete"
    LC_DELETE = "lc_delete"
    PIVOT_DELETE = "pivot_delete"

    def __lt__(self, other: Reduction) -> bool:
        return _REDUCTION_ORDER[self] < _REDUCTION_ORDER[other]


_REDUCTION_ORDER = {Reduction.DELETE: 0, Reduction.LC_DELETE: 1, Reduction.PIVOT_DELETE: 2}
REDUCTIONS = (Reduction.DELETE, Reduction.LC_DELETE, Reduction.PIVOT_DELETE)


def canonical_neighbor(g: Graph, v: int) -> int | None:
    nb = neighbors(g, v)
    if not nb:
        return None
    return (nb & -nb).bit_length() - 1


def reduce(g: Graph, v: int, kind: Reduction) -> Graph:
    """Apply one reduction at ``v``; G/v pivots on the lowest-id neighbour."""
    if kind is Reduction.DELETE:
        return delete(g, v)
    if kind is Reduction.LC_DELETE:
        return delete(local_complement(g, v), v)
    if kind is Reduction.PIVOT_DELETE:
        u = canonical_neighbor(g, v)
        if u is None:
            return delete(g, v)
        return delete(pivot(g, u, v), v)
    raise UsageError(f"unknown reduction {kind!r}")


def reductions(g: Graph, v: int) -> dict[Reduction, Graph]:
    return {kind: reduce(g, v, kind) for kind in REDUCTIONS}


class _BudgetExceeded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BUDGET_EXCEEDED"

    def __bool__(self):
        raise TypeError("BUDGET_EXCEEDED has no truth value; compare with `is`")


BUDGET_EXCEEDED = _BudgetExceeded()


def _lc_neighbours(adj: tuple[int, ...], verts: int) -> Iterator[tuple[int, ...]]:
    for v in iter_bits(verts):
        if adj[v] & (adj[v] - 1):  # at least two neighbours, otherwise *v is a no-op
            rows = list(adj)
            _lc_rows(rows, v)
            yield tuple(rows)


def locally_equivalent(g: Graph, h: Graph, node_budget: int = DEFAULT_ORBIT_BUDGET):
    """Whether ``h`` is reachable from ``g`` by local complementations.

    Bidirectional breadth-first search over the two orbits. Returns ``True``
    when the searches meet, ``False`` when either orbit is exhausted first,
    and ``BUDGET_EXCEEDED`` once more than ``node_budget`` distinct graphs
    have been visited.
    """
    if g.vertices != h.vertices or g.n != h.n:
        raise UsageError("local equivalence needs identical vertex-id sets")
    a, b = g.key(), h.key()
    if a == b:
        return True
    verts = g.vertices
    seen = ({a}, {b})
    frontier = (deque([a]), deque([b]))
    while frontier[0] and frontier[1]:
        side = 0 if len(seen[0]) <= len(seen[1]) else 1
        mine, other = seen[side], seen[1 - side]
        queue = frontier[side]
        for _ in range(len(queue)):
            cur = queue.popleft()
            for nxt in _lc_neighbours(cur, verts):
                if nxt in other:
                    return True
                if nxt not in mine:
                    mine.add(nxt)
                    queue.append(nxt)
                    if len(seen[0]) + len(seen[1]) > node_budget:
                        return BUDGET_EXCEEDED
    return False


def local_orbit(g: Graph, node_budget: int = DEFAULT_ORBIT_BUDGET) -> set[tuple[int, ...]] | _BudgetExceeded:
    """All adjacency encodings locally equivalent to ``g``."""
    start = g.key()
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in _lc_neighbours(cur, g.vertices):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > node_budget:
                    return BUDGET_EXCEEDED
                queue.append(nxt)
    return seen
