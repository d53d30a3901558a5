"""Reductions that keep the connectivity of one or two pairs of vertex sets.

The guarantees here are theorems: a single pair always keeps at least two of
the three reductions, two pairs always keep at least one, and once enough
free vertices exist some free vertex keeps two for both pairs. When one of
those fails on a concrete instance a :class:`~vmlink.errors.TheoremViolation`
carrying a reproducible report is raised instead of a silent return.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import TheoremViolation, UsageError
from .graph import REDUCTIONS, Graph, Reduction, iter_bits, reduce
from .rankconn import HALF, cut_rank, is_separating, kappa, local_conn, shrink_terminals
from .report import violation_report

OptionSet = frozenset  # frozenset[Reduction]


def option_names(options: Iterable[Reduction]) -> list[str]:
    return [kind.value for kind in sorted(options)]


def main_bound(k: int, l: int) -> int:
    """Free-vertex count that guarantees a doubly-good vertex: (2l+1)·4^k."""
    return (2 * l + 1) * 4 ** k


@dataclass(frozen=True)
class LinkingInstance:
    g: Graph
    q: int
    r: int
    s: int = 0
    t: int = 0
    k: int = field(init=False)
    l: int = field(init=False)
    free: int = field(init=False)

    def __post_init__(self):
        for name in ("q", "r", "s", "t"):
            m = getattr(self, name)
            if m < 0 or m & ~self.g.vertices:
                raise UsageError(f"{name} contains vertices not in the graph")
        if self.q & self.r:
            raise UsageError("q and r overlap")
        if self.s & self.t:
            raise UsageError("s and t overlap")
        object.__setattr__(self, "k", kappa(self.g, self.q, self.r).value)
        object.__setattr__(self, "l", kappa(self.g, self.s, self.t).value)
        terminals = self.q | self.r | self.s | self.t
        object.__setattr__(self, "free", self.g.vertices & ~terminals)

    def with_graph(self, h: Graph) -> LinkingInstance:
        return LinkingInstance(h, self.q, self.r, self.s, self.t)

    def masks(self) -> dict[str, int]:
        return {"q": self.q, "r": self.r, "s": self.s, "t": self.t}


def _require_free(g: Graph, v: int, terminals: int) -> None:
    if v not in g:
        raise UsageError(f"vertex {v} is not in the graph")
    if (terminals >> v) & 1:
        raise UsageError(f"vertex {v} is a terminal")


def _preserving(g: Graph, v: int, pairs: list[tuple[int, int, int]]) -> OptionSet:
    kept = []
    for kind in REDUCTIONS:
        h = reduce(g, v, kind)
        if all(kappa(h, a, b).value == target for a, b, target in pairs):
            kept.append(kind)
    return frozenset(kept)


def is_flexible(g: Graph, s: int, t: int, v: int) -> bool:
    """All three reductions at ``v`` keep κ(s, t)."""
    _require_free(g, v, s | t)
    target = kappa(g, s, t).value
    return all(kappa(reduce(g, v, kind), s, t).value == target for kind in REDUCTIONS)


def oum_linking_options(g: Graph, q: int, r: int, v: int) -> OptionSet:
    """Reductions at ``v`` that keep κ(q, r); always at least two of them."""
    if q & r:
        raise UsageError("q and r overlap")
    _require_free(g, v, q | r)
    k = kappa(g, q, r).value
    opts = _preserving(g, v, [(q, r, k)])
    if len(opts) < 2:
        raise TheoremViolation(violation_report(
            "oum_linking_options", g, expected="at least two options",
            observed={"options": option_names(opts), "k": k, "v": v}, q=q, r=r))
    return opts


def joint_good_options(inst: LinkingInstance, v: int) -> OptionSet:
    """Reductions at free ``v`` keeping both κ(q, r) and κ(s, t); never empty."""
    if not (inst.free >> v) & 1:
        raise UsageError(f"vertex {v} is not free")
    opts = _preserving(inst.g, v, [(inst.q, inst.r, inst.k), (inst.s, inst.t, inst.l)])
    if not opts:
        raise TheoremViolation(violation_report(
            "joint_good_options", inst.g, expected="at least one option",
            observed={"options": [], "k": inst.k, "l": inst.l, "v": v}, **inst.masks()))
    return opts


def pivot_only_options(inst: LinkingInstance, v: int) -> OptionSet:
    return joint_good_options(inst, v) & {Reduction.DELETE, Reduction.PIVOT_DELETE}


def reduce_preserving(inst: LinkingInstance, drop: int) -> Graph:
    """Remove every vertex of ``drop`` (ascending) by a reduction keeping both connectivities.

    At each step the first kept reduction in DELETE, LC_DELETE, PIVOT_DELETE
    order is applied.
    """
    if drop & ~inst.free:
        raise UsageError("drop must consist of free vertices")
    cur = inst
    for v in iter_bits(drop):
        kind = min(joint_good_options(cur, v))
        cur = cur.with_graph(reduce(cur.g, v, kind))
        if cur.k != inst.k or cur.l != inst.l:
            raise TheoremViolation(violation_report(
                "reduce_preserving", inst.g, expected={"k": inst.k, "l": inst.l},
                observed={"k": cur.k, "l": cur.l, "step": v}, drop=drop, **inst.masks()))
    return cur.g


@dataclass(frozen=True)
class SeparatingChain:
    """Ordering f_1..f_n of a vertex set with nested separating sets A_1 ⊆ ... ⊆ A_n."""

    order: tuple[int, ...]
    sets: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)


def chain_violations(chain: SeparatingChain, g: Graph, s: int, t: int, f: int) -> list[str]:
    """Names of the chain invariants that fail; empty when the chain is valid."""
    bad = []
    k = kappa(g, s, t).value
    if sorted(chain.order) != sorted(iter_bits(f)) or len(chain.sets) != len(chain.order):
        bad.append("ordering")
    prefix = 0
    for i, (fi, a) in enumerate(zip(chain.order, chain.sets)):
        prefix |= 1 << fi
        if not is_separating(g, s, t, a, k):
            bad.append(f"separating[{i}]")
        if a & f != prefix:
            bad.append(f"prefix[{i}]")
        if i and chain.sets[i - 1] & ~a:
            bad.append(f"nested[{i}]")
    return bad


def _min_separating_containing(g: Graph, s: int, t: int, k: int, u: int) -> int | None:
    # Order-k separating sets containing u are closed under intersection, so
    # the minimum-size one is unique; it is also the numerically smallest
    # minimizer of κ(s ∪ {u}, t), which is what kappa returns.
    res = kappa(g, s | (1 << u), t)
    return res.witness if res.value == k else None


def _chain_link(g: Graph, s: int, t: int, k: int, remaining: int) -> tuple[int, int]:
    best = None
    for u in iter_bits(remaining):
        a = _min_separating_containing(g, s, t, k, u)
        if a is None:
            raise TheoremViolation(violation_report(
                "separating_chain", g, expected=f"order-{k} separating set containing {u}",
                observed="none", s=s, t=t, f=remaining))
        cand = (a.bit_count(), a, u)
        if best is None or cand < best:
            best = cand
    _, a, x = best
    if a & remaining != 1 << x:
        raise TheoremViolation(violation_report(
            "separating_chain", g, expected=f"A ∩ F = {{{x}}}", observed=f"{a & remaining:#x}",
            s=s, t=t, f=remaining))
    return x, a


def separating_chain(g: Graph, s: int, t: int, f: int) -> SeparatingChain:
    """Nested order-κ(s, t) separating sets absorbing ``f`` one vertex at a time.

    Every vertex of ``f`` must be free and not (s, t)-flexible. Each step
    takes, over the remaining vertices u, the smallest separating set of
    order k containing u (ties by bitmask), appends that u, and continues
    with the chosen set as the new source side.
    """
    if s & t:
        raise UsageError("s and t overlap")
    if f & ~g.vertices or f & (s | t):
        raise UsageError("f must consist of free vertices of the graph")
    for v in iter_bits(f):
        if is_flexible(g, s, t, v):
            raise UsageError(f"vertex {v} is ({s:#x},{t:#x})-flexible")
    k = kappa(g, s, t).value
    order, sets = [], []
    src, remaining = s, f
    while remaining:
        x, a = _chain_link(g, src, t, k, remaining)
        order.append(x)
        sets.append(a)
        src = a
        remaining &= ~(1 << x)
    return SeparatingChain(tuple(order), tuple(sets))


@dataclass(frozen=True)
class NestingOutcome:
    """Either a doubly-good ``vertex`` with its options, or an enlarged pair (q_new, r_new)."""

    vertex: int | None = None
    options: OptionSet | None = None
    q_new: int | None = None
    r_new: int | None = None

    @property
    def found_vertex(self) -> bool:
        return self.vertex is not None


def nesting_violations(g: Graph, q: int, r: int, out: NestingOutcome) -> list[str]:
    """Which of the three enlargement guarantees fail for an outcome with (q_new, r_new)."""
    qn, rn = out.q_new, out.r_new
    k = kappa(g, q, r).value
    free = g.vertices & ~(q | r)
    bad = []
    if qn & rn or q & ~qn or r & ~rn or cut_rank(g, qn) != k or cut_rank(g, rn) != k:
        bad.append("containment")
    if local_conn(g, qn, rn) < local_conn(g, q, r) + HALF:
        bad.append("local_connectivity")
    if (g.vertices & ~(qn | rn)).bit_count() < free.bit_count() // 2:
        bad.append("remaining_size")
    return bad


def nesting_step(g: Graph, q: int, r: int, s: int, t: int) -> NestingOutcome:
    """One round of enlarging (q, r) while no free vertex is doubly good.

    Requires s ∪ t ⊆ q ∪ r, a nonempty free set F = V - (q ∪ r),
    ρ(q) = ρ(r) = κ(q, r), and no vertex of F flexible for either pair.
    Returns a vertex of F with two joint options if one exists; otherwise
    (q', r') with q ⊆ q', r ⊆ r', ρ(q') = ρ(r') = k, local connectivity up
    by at least ½, and at least ⌊|F|/2⌋ vertices left outside q' ∪ r'.
    """
    inst = LinkingInstance(g, q, r, s, t)
    k = inst.k
    free = g.vertices & ~(q | r)
    if (s | t) & ~(q | r):
        raise UsageError("s ∪ t must lie inside q ∪ r")
    if not free:
        raise UsageError("no free vertices")
    if cut_rank(g, q) != k or cut_rank(g, r) != k:
        raise UsageError("need ρ(q) = ρ(r) = κ(q, r)")
    for v in iter_bits(free):
        if is_flexible(g, q, r, v) or is_flexible(g, s, t, v):
            raise UsageError(f"free vertex {v} is flexible")

    for v in iter_bits(free):
        opts = joint_good_options(inst, v)
        if len(opts) >= 2:
            return NestingOutcome(vertex=v, options=opts)

    chain = separating_chain(g, q, r, free)
    gv, _ = _chain_link(g, s, t, inst.l, free)
    i = chain.order.index(gv) + 1
    n = len(chain)
    if i <= n // 2:
        out = NestingOutcome(q_new=chain.sets[i - 1], r_new=r)
    else:
        a_prev = chain.sets[i - 2] if i >= 2 else q
        out = NestingOutcome(q_new=q, r_new=g.vertices & ~a_prev)
    bad = nesting_violations(g, q, r, out)
    if bad:
        raise TheoremViolation(violation_report(
            "nesting_step", g, expected="enlarged pair with all guarantees",
            observed={"failed": bad, "q_new": f"{out.q_new:#x}", "r_new": f"{out.r_new:#x}"},
            q=q, r=r, s=s, t=t))
    return out


def find_doubly_good_vertex(inst: LinkingInstance) -> tuple[int, OptionSet] | None:
    """First free vertex (ascending id) with at least two joint options, or None.

    None is only possible below the free-vertex bound; at or above it a
    miss raises TheoremViolation.
    """
    for v in iter_bits(inst.free):
        opts = joint_good_options(inst, v)
        if len(opts) >= 2:
            return v, opts
    bound = main_bound(inst.k, inst.l)
    if inst.free.bit_count() >= bound:
        raise TheoremViolation(violation_report(
            "find_doubly_good_vertex", inst.g, expected=f"a doubly-good vertex (|F| >= {bound})",
            observed={"found": None, "k": inst.k, "l": inst.l, "free": inst.free.bit_count()},
            **inst.masks()))
    return None


def find_vertex_by_reduction(inst: LinkingInstance) -> tuple[int, OptionSet] | None:
    """Doubly-good vertex found through shrunken terminals and a reduced graph.

    Shrinks (s, t) to (s1, t1) of size ℓ, removes the discarded terminals
    while keeping both connectivities, searches the reduced instance, and
    then re-evaluates the chosen vertex on the original graph.
    """
    s1, t1 = shrink_terminals(inst.g, inst.s, inst.t)
    small = LinkingInstance(inst.g, inst.q, inst.r, s1, t1)
    drop = (inst.s | inst.t) & ~(inst.q | inst.r | s1 | t1)
    h = reduce_preserving(small, drop)
    found = find_doubly_good_vertex(small.with_graph(h))
    if found is None:
        return None
    v, _ = found
    opts = joint_good_options(inst, v)
    if len(opts) < 2:
        raise TheoremViolation(violation_report(
            "find_vertex_by_reduction", inst.g, expected="two options on the original instance",
            observed={"v": v, "options": option_names(opts)}, **inst.masks()))
    return v, opts
