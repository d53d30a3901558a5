from __future__ import annotations

from hypothesis import strategies as st

from vmlink.graph import Graph


def C5() -> Graph:
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def P3() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def K(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    mask = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)) if n > 1 else 0
    return Graph.from_edge_mask(n, mask)


@st.composite
def graph_and_subset(draw, min_n: int = 1, max_n: int = 8):
    g = draw(graphs(min_n, max_n))
    x = draw(st.integers(0, (1 << g.n) - 1))
    return g, x


@st.composite
def graph_and_pair(draw, min_n: int = 1, max_n: int = 8):
    """A graph with two disjoint vertex sets, each vertex assigned to s, t or neither."""
    g = draw(graphs(min_n, max_n))
    s = t = 0
    for v in range(g.n):
        side = draw(st.integers(0, 2))
        if side == 1:
            s |= 1 << v
        elif side == 2:
            t |= 1 << v
    return g, s, t


def naive_rank(entries: list[list[int]]) -> int:
    """Row reduction on lists of 0/1, kept deliberately simple."""
    m = [row[:] for row in entries]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a ^ b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def naive_cut_rank(g: Graph, x: int) -> int:
    inside = [v for v in range(g.n) if v in g and (x >> v) & 1]
    outside = [v for v in range(g.n) if v in g and not (x >> v) & 1]
    if not inside or not outside:
        return 0
    return naive_rank([[int(g.has_edge(a, b)) for b in outside] for a in inside])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
