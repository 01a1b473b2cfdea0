"""Implications with a fixed consequent, mined by hypergraph dualization.

Attribute total supports and relevance come either from a stored
implication list (full pipeline) or from in-stream accumulation (Small
Space pipeline).
"""

from .dualize import (
    CapacityError,
    Hypergraph,
    dualize,
    dualize_bruteforce,
    dualize_reverse_search,
    minimize_edges,
)
from .meter import Meter
from .pipeline import (
    Implication,
    RunConfig,
    RunReport,
    TargetRefused,
    TotalSupportAccumulator,
    accumulate,
    implication_support,
    relevance,
    run,
    run_full,
    run_small_space,
)
from .relations import (
    ArrowRelations,
    TargetContext,
    build_hypergraph,
    compute_arrows,
    compute_d_row,
    compute_down_arrow,
    compute_up_arrow,
)
from .table import (
    BinaryTable,
    ReductionLog,
    StatusKind,
    TableParseError,
    TargetStatus,
    check_target_status,
    closure,
    negate_column,
    parse_table,
    read_table,
    reduce_table,
    support_of_attrs,
    support_of_rows,
)

__version__ = "0.1.0"
