"""Checkable properties, one per lemma/theorem, evaluated graph by graph.

Each checker receives a :class:`Case` (a graph, a per-graph RNG and an
instance cap) and returns ``(instances_checked, violations)``. A checker
enumerates its own instance family on the graph (subset pairs, disjoint
terminal pairs, vertices...) and samples ``cap`` members uniformly when the
family is larger than the cap.

Properties over all subsets use a precomputed cut-rank table and numpy, so
they are limited to graphs with at most ``TABLE_LIMIT`` ids.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from ..errors import TheoremViolation, UsageError
from ..graph import (
    BUDGET_EXCEEDED,
    Graph,
    canonical_neighbor,
    delete,
    iter_bits,
    local_complement,
    locally_equivalent,
    pivot,
    reduce,
    Reduction,
)
from ..linking import (
    LinkingInstance,
    chain_violations,
    find_doubly_good_vertex,
    find_vertex_by_reduction,
    is_flexible,
    joint_good_options,
    main_bound,
    nesting_step,
    nesting_violations,
    oum_linking_options,
    pivot_only_options,
    reduce_preserving,
    separating_chain,
)
from ..rankconn import (
    connectivity_table,
    cut_rank,
    cut_rank_table,
    kappa,
    kappa_bruteforce,
    shrink_terminals,
)
from ..report import instance_record, mask_hex

TABLE_LIMIT = 12


@dataclass(frozen=True)
class Violation:
    property: str
    instance: dict[str, Any]
    observed: Any
    expected: Any

    def record(self) -> dict[str, Any]:
        return {
            "record": "violation",
            "property": self.property,
            "instance": self.instance,
            "observed": self.observed,
            "expected": self.expected,
        }

    def sort_key(self) -> str:
        return json.dumps(self.record(), sort_keys=True)


@dataclass
class Case:
    g: Graph
    rng: random.Random
    cap: int | None


@dataclass(frozen=True)
class Property:
    name: str
    check: Callable[[Case], tuple[int, list[Violation]]]
    description: str
    default_cap: int | None


PROPERTIES: dict[str, Property] = {}


def register(name: str, description: str, default_cap: int | None = None):
    def deco(fn):
        PROPERTIES[name] = Property(name, fn, description, default_cap)
        return fn
    return deco


def get_property(name: str) -> Property:
    try:
        return PROPERTIES[name]
    except KeyError:
        raise UsageError(f"unknown property {name!r}; known: {', '.join(sorted(PROPERTIES))}") from None


# ---------------------------------------------------------------------------
# instance families

def pick(case: Case, total: int) -> list[int]:
    """Indices into a family of ``total`` instances: all of them, or ``cap`` sampled."""
    if case.cap is None or total <= case.cap:
        return list(range(total))
    if total < 1 << 62:
        return sorted(case.rng.sample(range(total), case.cap))
    return sorted(case.rng.randrange(total) for _ in range(case.cap))


def _digits(i: int, ids: Sequence[int], base: int) -> list[tuple[int, int]]:
    out = []
    for v in ids:
        i, d = divmod(i, base)
        out.append((v, d))
    return out


def disjoint_pair(i: int, ids: Sequence[int]) -> tuple[int, int]:
    s = t = 0
    for v, d in _digits(i, ids, 3):
        if d == 1:
            s |= 1 << v
        elif d == 2:
            t |= 1 << v
    return s, t


def two_pairs(i: int, ids: Sequence[int]) -> tuple[int, int, int, int]:
    q = r = s = t = 0
    for v, d in _digits(i, ids, 9):
        a, b = d % 3, d // 3
        if a == 1:
            q |= 1 << v
        elif a == 2:
            r |= 1 << v
        if b == 1:
            s |= 1 << v
        elif b == 2:
            t |= 1 << v
    return q, r, s, t


def _np_digits(idx: np.ndarray, n: int, base: int) -> list[np.ndarray]:
    out = []
    rest = idx.copy()
    for _ in range(n):
        out.append(rest % base)
        rest //= base
    return out


def _expand(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    # insert a zero bit at position v
    low = m & ((1 << v) - 1)
    return low | ((m >> v) << (v + 1))


def _table_guard(g: Graph) -> None:
    if g.n > TABLE_LIMIT:
        raise UsageError(f"table-based properties need n <= {TABLE_LIMIT}")


def _vio(name: str, g: Graph, observed: Any, expected: Any, **sets: int) -> Violation:
    return Violation(name, instance_record(g, **sets), observed, expected)


class _Tables:
    """Lazily computed cut-rank and connectivity tables for G and each G∖v."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.full = cut_rank_table(g)
        self._del: dict[int, np.ndarray] = {}
        self._conn: dict[int | None, np.ndarray] = {}

    def deleted(self, v: int) -> np.ndarray:
        if v not in self._del:
            self._del[v] = cut_rank_table(delete(self.g, v))
        return self._del[v]

    def deleted_stack(self) -> np.ndarray:
        return np.stack([self.deleted(v) for v in range(self.n)])

    def conn(self, v: int | None = None) -> np.ndarray:
        if v not in self._conn:
            if v is None:
                self._conn[v] = connectivity_table(self.full, self.n)
            else:
                self._conn[v] = connectivity_table(self.deleted(v), self.n, forbidden=1 << v)
        return self._conn[v]


def _first_bad(bad: np.ndarray, describe: Callable[[int], Violation]) -> list[Violation]:
    return [describe(int(j)) for j in np.nonzero(bad)[0]]


# ---------------------------------------------------------------------------
# cut-rank inequalities (table based)

@register("subeq", "cut-rank is submodular: ρ(X)+ρ(Y) >= ρ(X∩Y)+ρ(X∪Y)")
def check_subeq(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    tb = cut_rank_table(g).astype(np.int32)
    idx = np.array(pick(case, 1 << (2 * n)), dtype=np.int64)
    x, y = idx & ((1 << n) - 1), idx >> n
    bad = tb[x] + tb[y] < tb[x & y] + tb[x | y]
    return len(idx), _first_bad(bad, lambda j: _vio(
        "subeq", g, observed=[int(tb[x[j]] + tb[y[j]]), int(tb[x[j] & y[j]] + tb[x[j] | y[j]])],
        expected="lhs >= rhs", x=int(x[j]), y=int(y[j])))


@register("subtool", "mixed inequalities (S1) and (S2) between G and G∖v")
def check_subtool(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    if n == 0:
        return 0, []
    tabs = _Tables(g)
    tg = tabs.full.astype(np.int32)
    td = tabs.deleted_stack().astype(np.int32)
    half = 1 << (n - 1)
    idx = np.array(pick(case, n * half * half), dtype=np.int64)
    v = idx % n
    rest = idx // n
    x = _expand(rest % half, v)
    y = _expand(rest // half, v)
    vb = np.left_shift(1, v)
    s1 = td[v, x] + tg[y | vb] < td[v, x & y] + tg[x | y | vb]
    s2 = td[v, x] + tg[y] < tg[x & y] + td[v, x | y]
    out = []
    for label, bad in (("S1", s1), ("S2", s2)):
        out += _first_bad(bad, lambda j, label=label: _vio(
            "subtool", g, observed=label, expected="inequality holds",
            v=1 << int(v[j]), x=int(x[j]), y=int(y[j])))
    return len(idx), out


@register("delrank", "deleting v moves ρ(X) and ρ(X∪{v}) by at most one, never up")
def check_delrank(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    if n == 0:
        return 0, []
    tabs = _Tables(g)
    tg = tabs.full.astype(np.int32)
    td = tabs.deleted_stack().astype(np.int32)
    half = 1 << (n - 1)
    idx = np.array(pick(case, n * half), dtype=np.int64)
    v = idx % n
    x = _expand(idx // n, v)
    vb = np.left_shift(1, v)
    d = td[v, x]
    bad_i = (tg[x] < d) | (tg[x] > d + 1)
    bad_ii = (tg[x | vb] < d) | (tg[x | vb] > d + 1)
    out = []
    for label, bad in (("i", bad_i), ("ii", bad_ii)):
        out += _first_bad(bad, lambda j, label=label: _vio(
            "delrank", g, observed=label, expected="within one", v=1 << int(v[j]), x=int(x[j])))
    return len(idx), out


@register("local", "cut-rank is invariant under local complementation and pivoting")
def check_local(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    size = 1 << n
    ops: list[tuple[str, tuple[int, ...]]] = [("lc", (v,)) for v in range(n)]
    ops += [("pivot", e) for e in g.edges()]
    idx = pick(case, len(ops) * size)
    tg = cut_rank_table(g)
    by_op: dict[int, list[int]] = {}
    for i in idx:
        by_op.setdefault(i // size, []).append(i % size)
    out = []
    for oi, xs in sorted(by_op.items()):
        kind, args = ops[oi]
        h = local_complement(g, *args) if kind == "lc" else pivot(g, *args)
        th = cut_rank_table(h)
        xs_arr = np.array(xs, dtype=np.int64)
        bad = th[xs_arr] != tg[xs_arr]
        for j in np.nonzero(bad)[0]:
            out.append(_vio("local", g, observed={"op": kind, "at": list(args),
                                                  "after": int(th[xs_arr[j]])},
                            expected=int(tg[xs_arr[j]]), x=int(xs_arr[j])))
    return len(idx), out


@register("capcup", "order-κ separating sets are closed under ∩ and ∪", default_cap=64)
def check_capcup(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    tb = cut_rank_table(g)
    every = np.arange(1 << n)
    ids = list(range(n))
    count = 0
    out = []
    for i in pick(case, 3 ** n):
        s, t = disjoint_pair(i, ids)
        admissible = every[((every & s) == s) & ((every & t) == 0)]
        k = tb[admissible].min()
        seps = admissible[tb[admissible] == k]
        meet = seps[:, None] & seps[None, :]
        join = seps[:, None] | seps[None, :]
        bad = (tb[meet] != k) | (tb[join] != k)
        count += 1
        if bad.any():
            a, b = (int(z) for z in np.argwhere(bad)[0])
            out.append(_vio("capcup", g, observed={"a": mask_hex(int(seps[a])), "b": mask_hex(int(seps[b]))},
                            expected=f"meet and join of order {int(k)}", s=s, t=t))
    return count, out


@register("conn", "local connectivity is monotone: X1 ⊆ X2 gives ⊓̃[X1,Y] <= ⊓̃[X2,Y]")
def check_conn(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    tb = cut_rank_table(g).astype(np.int32)
    idx = np.array(pick(case, 4 ** n), dtype=np.int64)
    x1 = np.zeros_like(idx)
    x2 = np.zeros_like(idx)
    y = np.zeros_like(idx)
    for v, d in enumerate(_np_digits(idx, n, 4)):
        x1 |= np.where(d == 1, 1 << v, 0)
        x2 |= np.where((d == 1) | (d == 2), 1 << v, 0)
        y |= np.where(d == 3, 1 << v, 0)
    lhs = tb[x1] + tb[y] - tb[x1 | y]
    rhs = tb[x2] + tb[y] - tb[x2 | y]
    bad = lhs > rhs
    return len(idx), _first_bad(bad, lambda j: _vio(
        "conn", g, observed=[int(lhs[j]), int(rhs[j])], expected="twice ⊓̃ monotone",
        x1=int(x1[j]), x2=int(x2[j]), y=int(y[j])))


def _per_vertex(tabs: _Tables, v: np.ndarray, sel: np.ndarray, lookup) -> np.ndarray:
    """Evaluate ``lookup(tables_of_vertex, rows)`` grouped by deleted vertex, for rows in ``sel``."""
    out = np.zeros(len(v), dtype=np.int64)
    for vv in np.unique(v[sel]):
        rows = sel & (v == vv)
        out[rows] = lookup(int(vv), rows)
    return out


@register("qset", "(Q1)/(Q2): when ρ(Q)=κ(Q,R) and deleting v lowers κ")
def check_qset(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    if n == 0:
        return 0, []
    tabs = _Tables(g)
    tg = tabs.full.astype(np.int64)
    kg = tabs.conn()
    idx = np.array(pick(case, n * 3 ** n), dtype=np.int64)
    v = idx % n
    q = np.zeros_like(idx)
    r = np.zeros_like(idx)
    for w, d in enumerate(_np_digits(idx // n, n, 3)):
        q |= np.where(d == 1, 1 << w, 0)
        r |= np.where(d == 2, 1 << w, 0)
    vb = np.left_shift(1, v)
    k = kg[q, r].astype(np.int64)
    sel = (((q | r) & vb) == 0) & (tg[q] == k)
    kd = _per_vertex(tabs, v, sel, lambda vv, rows: tabs.conn(vv)[q[rows], r[rows]])
    sel &= kd < k
    rdq = _per_vertex(tabs, v, sel, lambda vv, rows: tabs.deleted(vv)[q[rows]])
    q1 = sel & (tg[q | vb] < tg[q])
    q2 = sel & (rdq == tg[q]) & (tg[q | vb] != tg[q] + 1)
    out = []
    for label, bad in (("Q1", q1), ("Q2", q2)):
        out += _first_bad(bad, lambda j, label=label: _vio(
            "qset", g, observed=label, expected="conclusion holds",
            q=int(q[j]), r=int(r[j]), v=int(vb[j])))
    return int(sel.sum()), out


@register("nonflex", "if deleting v lowers κ(U,T) for U ⊆ S with ρ(S)=κ(S,T), it lowers κ(S,T)")
def check_nonflex(case: Case):
    g = case.g
    _table_guard(g)
    n = g.n
    if n == 0:
        return 0, []
    tabs = _Tables(g)
    tg = tabs.full.astype(np.int64)
    kg = tabs.conn()
    idx = np.array(pick(case, n * 4 ** n), dtype=np.int64)
    v = idx % n
    s = np.zeros_like(idx)
    u = np.zeros_like(idx)
    t = np.zeros_like(idx)
    # digit 1: S - U, 2: U, 3: T
    for w, d in enumerate(_np_digits(idx // n, n, 4)):
        s |= np.where((d == 1) | (d == 2), 1 << w, 0)
        u |= np.where(d == 2, 1 << w, 0)
        t |= np.where(d == 3, 1 << w, 0)
    vb = np.left_shift(1, v)
    kst = kg[s, t].astype(np.int64)
    sel = (((s | t) & vb) == 0) & (tg[s] == kst)
    kd_ut = _per_vertex(tabs, v, sel, lambda vv, rows: tabs.conn(vv)[u[rows], t[rows]])
    sel &= kd_ut < kg[u, t]
    kd_st = _per_vertex(tabs, v, sel, lambda vv, rows: tabs.conn(vv)[s[rows], t[rows]])
    bad = sel & (kd_st >= kst)
    return int(sel.sum()), _first_bad(bad, lambda j: _vio(
        "nonflex", g, observed=int(kd_st[j]), expected=f"< {int(kst[j])}",
        s=int(s[j]), t=int(t[j]), u=int(u[j]), v=int(vb[j])))


# ---------------------------------------------------------------------------
# connectivity under vertex-minors

@register("kmonotone", "κ never increases under one-step vertex-minor operations", default_cap=8)
def check_kmonotone(case: Case):
    g = case.g
    n = g.n
    ids = list(range(n))
    count = 0
    out = []
    for i in pick(case, n * 3 ** n):
        v = i % n
        s, t = disjoint_pair(i // n, ids)
        base = kappa(g, s, t).value
        minors = [("lc", local_complement(g, v))]
        u = canonical_neighbor(g, v)
        if u is not None:
            minors.append(("pivot", pivot(g, u, v)))
        if not ((s | t) >> v) & 1:
            minors += [(kind.value, reduce(g, v, kind)) for kind in Reduction]
        for label, h in minors:
            count += 1
            val = kappa(h, s, t).value
            if val > base:
                out.append(_vio("kmonotone", g, observed={"op": label, "kappa": val},
                                expected=f"<= {base}", s=s, t=t, v=1 << v))
    return count, out


@register("subconn", "κ is submodular over pairs of disjoint pairs", default_cap=4)
def check_subconn(case: Case):
    g = case.g
    ids = list(range(g.n))
    out = []
    idx = pick(case, 9 ** g.n)
    for i in idx:
        x1, x2, y1, y2 = two_pairs(i, ids)
        lhs = kappa_bruteforce(g, x1, x2).value + kappa_bruteforce(g, y1, y2).value
        rhs = kappa_bruteforce(g, x1 & y1, x2 | y2).value + kappa_bruteforce(g, x1 | y1, x2 & y2).value
        if lhs < rhs:
            out.append(_vio("subconn", g, observed=[lhs, rhs], expected="lhs >= rhs",
                            x1=x1, x2=x2, y1=y1, y2=y2))
    return len(idx), out


@register("kappa-oracle-agreement", "branch-and-bound κ equals plain enumeration, witness included",
          default_cap=1)
def check_kappa_oracle(case: Case):
    g = case.g
    ids = list(range(g.n))
    out = []
    idx = pick(case, 3 ** g.n)
    for i in idx:
        s, t = disjoint_pair(i, ids)
        fast, slow = kappa(g, s, t), kappa_bruteforce(g, s, t)
        if fast != slow:
            out.append(_vio("kappa-oracle-agreement", g,
                            observed=[fast.value, mask_hex(fast.witness)],
                            expected=[slow.value, mask_hex(slow.witness)], s=s, t=t))
    return len(idx), out


# ---------------------------------------------------------------------------
# local equivalence and pivot identities

@register("lc-involution", "(G*v)*v = G")
def check_lc_involution(case: Case):
    g = case.g
    out = [_vio("lc-involution", g, observed="differs", expected="identity", v=1 << v)
           for v in iter_bits(g.vertices) if local_complement(local_complement(g, v), v) != g]
    return g.order, out


@register("pivot-symmetry", "G*u*v*u = G*v*u*v on every edge")
def check_pivot_symmetry(case: Case):
    g = case.g
    edges = g.edges()
    out = []
    for u, v in edges:
        a = pivot(g, u, v)
        b = local_complement(local_complement(local_complement(g, v), u), v)
        if a != b:
            out.append(_vio("pivot-symmetry", g, observed="differs", expected="equal", u=1 << u, v=1 << v))
    return len(edges), out


def _equiv_result(a: Graph, b: Graph) -> str:
    res = locally_equivalent(a, b)
    if res is BUDGET_EXCEEDED:
        return "budget_exceeded"
    return "equivalent" if res else "inequivalent"


@register("gv-well-defined", "(G∧vx)∖v and (G∧vy)∖v are locally equivalent")
def check_gv_well_defined(case: Case):
    g = case.g
    count = 0
    out = []
    for v in iter_bits(g.vertices):
        nb = list(iter_bits(g.adj[v]))
        if len(nb) < 2:
            continue
        first = delete(pivot(g, v, nb[0]), v)
        for y in nb[1:]:
            count += 1
            res = _equiv_result(first, delete(pivot(g, v, y), v))
            if res != "equivalent":
                out.append(_vio("gv-well-defined", g, observed=res, expected="equivalent",
                                v=1 << v, x=1 << nb[0], y=1 << y))
    return count, out


def _three(g: Graph, v: int) -> list[Graph]:
    return [reduce(g, v, kind) for kind in (Reduction.DELETE, Reduction.LC_DELETE, Reduction.PIVOT_DELETE)]


@register("perm", "after G' = G*w the reductions at v match those of G up to local equivalence")
def check_perm(case: Case):
    g = case.g
    verts = list(iter_bits(g.vertices))
    pairs = [(v, w) for v in verts for w in verts]
    count = 0
    out = []
    for i in pick(case, len(pairs)):
        v, w = pairs[i]
        gw = local_complement(g, w)
        after = _three(gw, v)
        before = _three(g, v)
        if v == w:
            perm = (1, 0, 2)
        elif g.has_edge(v, w):
            perm = (0, 2, 1)
        else:
            perm = (0, 1, 2)
        count += 1
        for a, j in zip(after, perm):
            res = _equiv_result(a, before[j])
            if res != "equivalent":
                out.append(_vio("perm", g, observed={"pair": [after.index(a), j], "result": res},
                                expected="equivalent", v=1 << v, w=1 << w))
    return count, out


# ---------------------------------------------------------------------------
# linking theorems

@register("oum-two-options", "every free vertex keeps κ(Q,R) under at least two reductions", default_cap=12)
def check_oum(case: Case):
    g = case.g
    ids = list(range(g.n))
    count = 0
    out = []
    for i in pick(case, 3 ** g.n):
        q, r = disjoint_pair(i, ids)
        for v in iter_bits(g.vertices & ~(q | r)):
            count += 1
            try:
                oum_linking_options(g, q, r, v)
            except TheoremViolation as exc:
                out.append(_vio("oum-two-options", g, observed=exc.report["observed"],
                                expected=exc.report["expected"], q=q, r=r, v=1 << v))
    return count, out


def _instances(case: Case):
    ids = list(range(case.g.n))
    for i in pick(case, 9 ** case.g.n):
        yield LinkingInstance(case.g, *two_pairs(i, ids))


def _theorem_vio(name: str, inst: LinkingInstance, exc: TheoremViolation, **extra: int) -> Violation:
    return _vio(name, inst.g, observed=exc.report["observed"], expected=exc.report["expected"],
                **inst.masks(), **extra)


@register("joint-option-nonempty", "every free vertex keeps both connectivities under some reduction",
          default_cap=12)
def check_joint(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        for v in iter_bits(inst.free):
            count += 1
            try:
                joint_good_options(inst, v)
            except TheoremViolation as exc:
                out.append(_theorem_vio("joint-option-nonempty", inst, exc, v=1 << v))
    return count, out


@register("main-theorem", "with |F| >= (2l+1)4^k a doubly-good free vertex exists", default_cap=12)
def check_main(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        if inst.free.bit_count() < main_bound(inst.k, inst.l):
            continue
        count += 1
        try:
            find_doubly_good_vertex(inst)
        except TheoremViolation as exc:
            out.append(_theorem_vio("main-theorem", inst, exc))
    return count, out


@register("st-small", "main theorem on terminals shrunk to |S| = |T| = l", default_cap=12)
def check_st_small(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        s1, t1 = shrink_terminals(inst.g, inst.s, inst.t)
        small = LinkingInstance(inst.g, inst.q, inst.r, s1, t1)
        if small.free.bit_count() < main_bound(small.k, small.l):
            continue
        count += 1
        try:
            find_doubly_good_vertex(small)
        except TheoremViolation as exc:
            out.append(_theorem_vio("st-small", small, exc))
    return count, out


@register("pivot-only", "a doubly-good vertex keeps deletion or pivot-deletion", default_cap=12)
def check_pivot_only(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        try:
            found = find_doubly_good_vertex(inst)
        except TheoremViolation as exc:
            out.append(_theorem_vio("pivot-only", inst, exc))
            continue
        if found is None:
            continue
        count += 1
        v, _ = found
        if not pivot_only_options(inst, v):
            out.append(_vio("pivot-only", inst.g, observed=[], expected="nonempty", **inst.masks(), v=1 << v))
    return count, out


def _options_by_recompute(inst: LinkingInstance, v: int) -> list[str]:
    kept = []
    for kind in Reduction:
        h = reduce(inst.g, v, kind)
        if (kappa_bruteforce(h, inst.q, inst.r).value == inst.k
                and kappa_bruteforce(h, inst.s, inst.t).value == inst.l):
            kept.append(kind.value)
    return kept


@register("main-assembly", "vertex found via shrink + reduce is doubly good in the original graph",
          default_cap=6)
def check_assembly(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        try:
            found = find_vertex_by_reduction(inst)
        except TheoremViolation as exc:
            out.append(_theorem_vio("main-assembly", inst, exc))
            continue
        if found is None:
            if inst.free.bit_count() >= main_bound(inst.k, inst.l):
                out.append(_vio("main-assembly", inst.g, observed="not found",
                                expected="found above the bound", **inst.masks()))
            continue
        count += 1
        v, _ = found
        kept = _options_by_recompute(inst, v)
        if len(kept) < 2:
            out.append(_vio("main-assembly", inst.g, observed=kept, expected="two options",
                            **inst.masks(), v=1 << v))
    return count, out


# ---------------------------------------------------------------------------
# constructive outputs

@register("shrink-terminals", "|S1| = |T1| = κ(S1,T1) = κ(S,T)", default_cap=6)
def check_shrink(case: Case):
    g = case.g
    ids = list(range(g.n))
    out = []
    idx = pick(case, 3 ** g.n)
    for i in idx:
        s, t = disjoint_pair(i, ids)
        s1, t1 = shrink_terminals(g, s, t)
        target = kappa_bruteforce(g, s, t).value
        got = kappa_bruteforce(g, s1, t1).value
        if s1 & ~s or t1 & ~t or not (s1.bit_count() == t1.bit_count() == got == target):
            out.append(_vio("shrink-terminals", g,
                            observed={"s1": mask_hex(s1), "t1": mask_hex(t1), "kappa": got},
                            expected=target, s=s, t=t))
    return len(idx), out


@register("reduce-preserving", "removing free vertices by kept reductions preserves both κ",
          default_cap=4)
def check_reduce_preserving(case: Case):
    count = 0
    out = []
    for inst in _instances(case):
        drop = 0
        for v in iter_bits(inst.free):
            if case.rng.random() < 0.5:
                drop |= 1 << v
        count += 1
        try:
            h = reduce_preserving(inst, drop)
        except TheoremViolation as exc:
            out.append(_theorem_vio("reduce-preserving", inst, exc, drop=drop))
            continue
        got = (kappa_bruteforce(h, inst.q, inst.r).value, kappa_bruteforce(h, inst.s, inst.t).value)
        if h.vertices != inst.g.vertices & ~drop or got != (inst.k, inst.l):
            out.append(_vio("reduce-preserving", inst.g, observed=list(got),
                            expected=[inst.k, inst.l], **inst.masks(), drop=drop))
    return count, out


@register("separating-chain", "chain sets are order-κ separating, nested, with A_i ∩ F = {f_1..f_i}",
          default_cap=4)
def check_chain(case: Case):
    g = case.g
    ids = list(range(g.n))
    count = 0
    out = []
    for i in pick(case, 3 ** g.n):
        s, t = disjoint_pair(i, ids)
        f = 0
        for v in iter_bits(g.vertices & ~(s | t)):
            if not is_flexible(g, s, t, v):
                f |= 1 << v
        if not f:
            continue
        count += 1
        try:
            chain = separating_chain(g, s, t, f)
        except TheoremViolation as exc:
            out.append(_vio("separating-chain", g, observed=exc.report["observed"],
                            expected=exc.report["expected"], s=s, t=t, f=f))
            continue
        bad = chain_violations(chain, g, s, t, f)
        if bad:
            out.append(_vio("separating-chain", g, observed=bad, expected=[], s=s, t=t, f=f))
    return count, out


def nesting_input(g: Graph, rng: random.Random) -> tuple[int, int, int, int] | None:
    """Try to derive a valid nesting-step input (q, r, s, t) on ``g``."""
    q, r = _random_pair(rng, g.vertices)
    # enlarge to q ⊆ X with ρ(X) = κ, then r ⊆ Y disjoint from X with ρ(Y) = κ
    x = kappa(g, q, r).witness
    y = kappa(g, r, x).witness
    free = g.vertices & ~(x | y)
    if not free:
        return None
    k = kappa(g, x, y).value
    if cut_rank(g, x) != k or cut_rank(g, y) != k:
        return None
    if rng.random() < 0.5:
        s, t = x, y
    else:
        s, t = _random_pair(rng, x | y)
    for v in iter_bits(free):
        if is_flexible(g, x, y, v) or is_flexible(g, s, t, v):
            return None
    return x, y, s, t


def _random_pair(rng: random.Random, pool: int) -> tuple[int, int]:
    a = b = 0
    for v in iter_bits(pool):
        z = rng.random()
        if z < 0.35:
            a |= 1 << v
        elif z < 0.7:
            b |= 1 << v
    return a, b


@register("nesting-step", "nesting outcome is a doubly-good vertex or an enlarged pair with all guarantees",
          default_cap=8)
def check_nesting(case: Case):
    g = case.g
    attempts = case.cap if case.cap is not None else 8
    count = 0
    out = []
    for _ in range(attempts):
        args = nesting_input(g, case.rng)
        if args is None:
            continue
        q, r, s, t = args
        count += 1
        try:
            res = nesting_step(g, q, r, s, t)
        except TheoremViolation as exc:
            out.append(_vio("nesting-step", g, observed=exc.report["observed"],
                            expected=exc.report["expected"], q=q, r=r, s=s, t=t))
            continue
        if res.found_vertex:
            inst = LinkingInstance(g, q, r, s, t)
            if len(_options_by_recompute(inst, res.vertex)) < 2:
                out.append(_vio("nesting-step", g, observed="vertex not doubly good",
                                expected="two options", q=q, r=r, s=s, t=t, v=1 << res.vertex))
        else:
            bad = nesting_violations(g, q, r, res)
            if bad:
                out.append(_vio("nesting-step", g, observed=bad, expected=[], q=q, r=r, s=s, t=t))
    return count, out


@register("nesting-enlarged", "like nesting-step, counting only outcomes that enlarge the pair",
          default_cap=8)
def check_nesting_enlarged(case: Case):
    g = case.g
    attempts = case.cap if case.cap is not None else 8
    count = 0
    out = []
    for _ in range(attempts):
        args = nesting_input(g, case.rng)
        if args is None:
            continue
        q, r, s, t = args
        try:
            res = nesting_step(g, q, r, s, t)
        except TheoremViolation as exc:
            out.append(_vio("nesting-enlarged", g, observed=exc.report["observed"],
                            expected=exc.report["expected"], q=q, r=r, s=s, t=t))
            continue
        if res.found_vertex:
            continue
        count += 1
        bad = nesting_violations(g, q, r, res)
        if bad:
            out.append(_vio("nesting-enlarged", g, observed=bad, expected=[], q=q, r=r, s=s, t=t))
    return count, out
