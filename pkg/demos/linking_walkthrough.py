"""
Keeping two connectivities while shrinking a graph
==================================================

For a single pair (Q, R), every free vertex can be removed in at least two
of three ways (plain deletion, deletion after a local complementation, and
deletion after a pivot) without lowering the connectivity between Q and R.
With two pairs at once, enough free vertices force one vertex that still
has two good ways out.
"""

from __future__ import annotations

import random

from vmlink import (
    Graph,
    LinkingInstance,
    find_doubly_good_vertex,
    main_bound,
    oum_linking_options,
    pivot_only_options,
    reduce_preserving,
)
from vmlink.graph6 import encode
from vmlink.harness import at_bound_instance
from vmlink.linking import option_names

path = Graph.from_edges(3, [(0, 1), (1, 2)])
print("path 0-1-2, Q={0}, R={2}, options at 1:",
      option_names(oum_linking_options(path, 0b001, 0b100, 1)))

# A random instance with k = l = 1 and exactly (2l+1)4^k = 12 free vertices.
inst = at_bound_instance(random.Random("demo"), 1, 1)
print("instance", encode(inst.g), "k =", inst.k, "l =", inst.l,
      "free =", inst.free.bit_count(), "bound =", main_bound(1, 1))

v, opts = find_doubly_good_vertex(inst)
print("doubly-good vertex", v, "options", option_names(opts),
      "pivot-only", option_names(pivot_only_options(inst, v)))

# Strip every free vertex, one kept reduction at a time.
h = reduce_preserving(inst, inst.free)
kept = LinkingInstance(h, inst.q, inst.r, inst.s, inst.t)
print("after removing all free vertices:", h.order, "vertices, k =", kept.k, "l =", kept.l)
