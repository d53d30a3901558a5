"""Cut-rank connectivity, local complementation and vertex-minor linking on small graphs."""

from .errors import PreconditionError, TheoremViolation, UsageError
from .gf2 import GF2Matrix, rank, rank_batch, rank_rows, submatrix
from .graph import (
    BUDGET_EXCEEDED,
    REDUCTIONS,
    Graph,
    Reduction,
    canonical_neighbor,
    delete,
    delete_set,
    induced,
    local_complement,
    local_orbit,
    locally_equivalent,
    members,
    neighbors,
    pivot,
    reduce,
    reductions,
    vertex_mask,
)
from .graph6 import decode, encode
from .linking import (
    LinkingInstance,
    NestingOutcome,
    SeparatingChain,
    find_doubly_good_vertex,
    find_vertex_by_reduction,
    is_flexible,
    joint_good_options,
    main_bound,
    nesting_step,
    oum_linking_options,
    pivot_only_options,
    reduce_preserving,
    separating_chain,
)
from .rankconn import (
    HALF,
    HalfInt,
    KappaResult,
    cut_rank,
    is_separating,
    kappa,
    kappa_bruteforce,
    local_conn,
    shrink_terminals,
)

__all__ = [
    "BUDGET_EXCEEDED", "GF2Matrix", "Graph", "HALF", "HalfInt", "KappaResult", "LinkingInstance",
    "NestingOutcome", "PreconditionError", "REDUCTIONS", "Reduction", "SeparatingChain",
    "TheoremViolation", "UsageError", "canonical_neighbor", "cut_rank", "decode", "delete",
    "delete_set", "encode", "find_doubly_good_vertex", "find_vertex_by_reduction", "induced",
    "is_flexible", "is_separating", "joint_good_options", "kappa", "kappa_bruteforce",
    "local_complement", "local_conn", "local_orbit", "locally_equivalent", "main_bound", "members",
    "neighbors", "nesting_step", "oum_linking_options", "pivot", "pivot_only_options", "rank",
    "rank_batch", "rank_rows", "reduce", "reduce_preserving", "reductions", "separating_chain",
    "shrink_terminals", "submatrix", "vertex_mask",
]
