"""Dynamic maximal independent set for graphs of bounded arboricity."""

from .engine import (
    ADDED,
    REMOVED,
    Change,
    ChangeLog,
    DynamicMIS,
    InvariantViolation,
    Params,
    greedy_induced_mis,
)
from .orientation import FlipLog, GraphError, OrientationError, OrientedGraph
from .streams import (
    Update,
    UpdateStream,
    gen_forest_union,
    gen_hub_leaf,
    gen_preferential,
    parse,
    serialize,
)
from .verify import AuditReport, check_invariants, check_mis

__all__ = [
    "ADDED", "REMOVED", "AuditReport", "Change", "ChangeLog", "DynamicMIS",
    "FlipLog", "GraphError", "InvariantViolation", "OrientationError",
    "OrientedGraph", "Params", "Update", "UpdateStream", "check_invariants",
    "check_mis", "gen_forest_union", "gen_hub_leaf", "gen_preferential",
    "greedy_induced_mis", "parse", "serialize",
]
