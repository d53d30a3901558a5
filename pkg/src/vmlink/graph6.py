"""graph6 encoding (McKay's format) for :class:`~vmlink.graph.Graph`.

Graphs with deleted vertices are written on their present vertices in
ascending id order, so ids are compacted to ``0..order-1``.
"""

from __future__ import annotations

from .errors import UsageError
from .graph import MAX_VERTICES, Graph, members

HEADER = ">>graph6<<"


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise UsageError(f"graph6 size {n} too large")


def encode(g: Graph) -> str:
    ids = members(g.vertices)
    n = len(ids)
    out = [_size_prefix(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = g.adj[ids[j]]
        for i in range(j):
            acc = (acc << 1) | ((row >> ids[i]) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise UsageError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not (0 <= c <= 63) for c in codes):
        raise UsageError(f"invalid graph6 character in {text!r}")
    if codes[0] == 63:
        if len(codes) < 4 or codes[1] == 63:
            raise UsageError(f"unsupported graph6 size field in {text!r}")
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if n > MAX_VERTICES:
        raise UsageError(f"graph6 graph has {n} vertices, limit is {MAX_VERTICES}")
    npairs = n * (n - 1) // 2
    if len(body) != (npairs + 5) // 6:
        raise UsageError(f"graph6 body length mismatch for n={n}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    pad = len(body) * 6 - npairs
    if pad and body[-1] & ((1 << pad) - 1):
        raise UsageError("nonzero graph6 padding bits")
    return Graph(tuple(adj), (1 << n) - 1)
