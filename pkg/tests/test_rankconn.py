from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vmlink.errors import UsageError
from vmlink.gf2 import GF2Matrix, rank
from vmlink.graph import Graph, delete, local_complement, pivot
from vmlink.rankconn import (
    HALF,
    HalfInt,
    connectivity_table,
    cut_rank,
    cut_rank_table,
    is_separating,
    kappa,
    kappa_bruteforce,
    kappa_from_table,
    local_conn,
    shrink_terminals,
)

from conftest import C5, K, graph_and_pair, graph_and_subset, graphs


def matrix_cut_rank(g: Graph, x: int) -> int:
    """Cut-rank through an explicit 0/1 matrix, independent of the bit tricks."""
    rows = [v for v in range(g.n) if v in g and (x >> v) & 1]
    cols = [v for v in range(g.n) if v in g and not (x >> v) & 1]
    return rank(GF2Matrix.from_lists([[int(g.has_edge(a, b)) for b in cols] for a in rows], len(cols)))


def test_cut_rank_examples():
    assert cut_rank(C5(), 0) == 0
    assert cut_rank(C5(), 0b11) == 2
    for n in range(2, 6):
        for x in range(1, (1 << n) - 1):
            assert cut_rank(K(n), x) == 1


def test_kappa_examples():
    g = C5()
    assert kappa(g, 0, 0) == (0, 0)
    assert kappa(g, 0b1, 0b100).value == 1
    two = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    assert kappa(two, 0b1, 0b100000).value == 0


def test_kappa_overlap():
    with pytest.raises(UsageError):
        kappa(C5(), 0b11, 0b10)
    with pytest.raises(UsageError):
        kappa(C5(), 1 << 7, 0)


def test_local_conn_examples():
    g = C5()
    assert local_conn(g, 0b1, 0b100) == HalfInt(1 + 1 - 2)
    s = 0b00011
    assert local_conn(g, s, g.vertices & ~s) == HalfInt.of(cut_rank(g, s))
    assert local_conn(g, 0, 0b110) == HalfInt(0)


def test_is_separating_examples():
    g = C5()
    assert is_separating(g, 0b1, 0b100, 0b1, 1)
    assert not is_separating(g, 0b1, 0b100, 0b10, 1)
    assert cut_rank(g, 0b10001) == 2
    assert not is_separating(g, 0b1, 0b100, 0b10001, 1)


def test_shrink_examples():
    g = C5()
    assert shrink_terminals(g, 0b1, 0b100) == (0b1, 0b100)
    assert shrink_terminals(Graph.empty(4), 0b11, 0b1100) == (0, 0)


def test_halfint():
    assert HalfInt(1) + HALF == HalfInt.of(1)
    assert str(HalfInt(3)) == "3/2" and str(HalfInt(4)) == "2"
    assert HalfInt(1) < HalfInt.of(1)
    assert not HALF.is_integer()


@given(graph_and_subset())
def test_cut_rank_matches_matrix(gx):
    g, x = gx
    assert cut_rank(g, x) == matrix_cut_rank(g, x)
    assert cut_rank(g, x) == cut_rank(g, g.vertices & ~x)


@settings(max_examples=60)
@given(graph_and_pair(max_n=9))
def test_kappa_matches_bruteforce(gst):
    g, s, t = gst
    assert kappa(g, s, t) == kappa_bruteforce(g, s, t)


def test_bruteforce_witness_is_smallest_minimizer():
    g = C5()
    s, t = 0b1, 0b100
    free = [1, 3, 4]
    best = None
    for bits in itertools.product([0, 1], repeat=3):
        x = s | sum(b << v for b, v in zip(bits, free))
        cand = (cut_rank(g, x), x)
        best = cand if best is None or cand < best else best
    assert kappa(g, s, t) == best


@given(graph_and_pair(max_n=8))
def test_witness_contract(gst):
    g, s, t = gst
    val, w = kappa(g, s, t)
    assert s & ~w == 0 and w & t == 0 and w & ~g.vertices == 0
    assert cut_rank(g, w) == val
    assert is_separating(g, s, t, w, val)


@given(graph_and_pair(max_n=8))
def test_local_conn_at_most_kappa(gst):
    g, s, t = gst
    assert local_conn(g, s, t) <= HalfInt.of(kappa(g, s, t).value)


@settings(max_examples=60)
@given(graph_and_pair(max_n=9))
def test_shrink_terminals_contract(gst):
    g, s, t = gst
    s1, t1 = shrink_terminals(g, s, t)
    k = kappa_bruteforce(g, s, t).value
    assert s1 & ~s == 0 and t1 & ~t == 0
    assert s1.bit_count() == t1.bit_count() == kappa_bruteforce(g, s1, t1).value == k


@given(graphs(min_n=1, max_n=7), st.data())
def test_cut_rank_invariant_under_local_complement(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    h = local_complement(g, v)
    edges = g.edges()
    hp = pivot(g, *data.draw(st.sampled_from(edges))) if edges else g
    for x in range(1 << g.n):
        assert cut_rank(h, x) == cut_rank(g, x) == cut_rank(hp, x)


@given(graphs(min_n=1, max_n=7), st.data())
def test_table_matches_direct(g, data):
    g = delete(g, data.draw(st.integers(0, g.n - 1))) if data.draw(st.booleans()) else g
    table = cut_rank_table(g)
    for x in range(1 << g.n):
        assert table[x] == cut_rank(g, x & g.vertices)
    conn = connectivity_table(table, g.n)
    for _ in range(20):
        s = data.draw(st.integers(0, (1 << g.n) - 1)) & g.vertices
        t = data.draw(st.integers(0, (1 << g.n) - 1)) & g.vertices & ~s
        expect = kappa(g, s, t).value
        assert kappa_from_table(table, s, t, g.vertices) == expect
        assert conn[s, t] == expect
