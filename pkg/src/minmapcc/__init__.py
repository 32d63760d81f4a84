"""Shared-memory parallel connected components via minimum-mapping sweeps.

The engine lowers per-vertex labels toward each component's minimum vertex
ID using order-h minimum-mapping operators over the edge list; FastSV,
Rem-style union-find, and BFS serve as baselines and oracle. A benchmark
harness runs (graph x algorithm x mode x threads) matrices and emits CSV.
"""

from .baselines import (
    ComponentSummary,
    bfs_components,
    fastsv,
    normalize_labels,
    rem_union_find,
    summarize,
)
from .bench import (
    ExperimentRecord,
    PlanItem,
    VerifyReport,
    label_checksum,
    parse_plan_file,
    run_experiment,
    verify_labels,
    write_csv,
)
from .engine import (
    ForestDiagnostics,
    IterationStats,
    LabelArray,
    Schedule,
    VARIANTS,
    conditional_min_assign,
    early_convergence_check,
    forest_diagnostics,
    make_schedule,
    mm_order,
    run_contour,
)
from .errors import EdgeListParseError, IterationCapExceeded, MatrixMarketFormatError
from .graph import (
    Graph,
    GraphMetrics,
    exact_metrics,
    generate,
    load_edge_list,
    load_matrix_market,
    permute_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphMetrics",
    "load_edge_list",
    "load_matrix_market",
    "generate",
    "permute_vertices",
    "exact_metrics",
    "LabelArray",
    "Schedule",
    "IterationStats",
    "ForestDiagnostics",
    "VARIANTS",
    "conditional_min_assign",
    "mm_order",
    "make_schedule",
    "run_contour",
    "early_convergence_check",
    "forest_diagnostics",
    "ComponentSummary",
    "rem_union_find",
    "bfs_components",
    "fastsv",
    "normalize_labels",
    "summarize",
    "PlanItem",
    "ExperimentRecord",
    "VerifyReport",
    "parse_plan_file",
    "run_experiment",
    "verify_labels",
    "write_csv",
    "label_checksum",
    "EdgeListParseError",
    "MatrixMarketFormatError",
    "IterationCapExceeded",
    "__version__",
]
