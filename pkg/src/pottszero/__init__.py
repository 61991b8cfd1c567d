"""Anti-ferromagnetic Potts partition functions on small graphs: exact
polynomials, marginal-probability bounds with empirical verifiers, complex
zero scans near [0,1], and deterministic approximate coloring counts."""

__version__ = "0.1.0"

from .errors import (
    BranchError,
    BudgetExceededError,
    CannotInterpolateError,
    DomainError,
    GraphFormatError,
    InvalidRootError,
    PoleError,
    PottsError,
    StepTooLargeError,
    UndefinedMeasureError,
    ZeroRatioError,
)
from .graphs import (
    BlockedColorVector,
    PartiallyColoredGraph,
    RootedGraph,
    attach_pinned_leaf,
    blocked_color_vector,
    format_graph,
    parse_graph_text,
    pin_to_leaves,
    strip_pinned_neighbors,
    telescoping_decompose,
)
from .exact import (
    GaussianRational,
    WPolynomial,
    evaluate,
    marginal,
    partition_poly,
    restricted_partition_poly,
)
from .kernel import backend_name as kernel_backend

__all__ = [
    "__version__",
    "kernel_backend",
    "PartiallyColoredGraph",
    "RootedGraph",
    "BlockedColorVector",
    "WPolynomial",
    "GaussianRational",
    "partition_poly",
    "restricted_partition_poly",
    "marginal",
    "evaluate",
    "pin_to_leaves",
    "blocked_color_vector",
    "attach_pinned_leaf",
    "strip_pinned_neighbors",
    "telescoping_decompose",
    "parse_graph_text",
    "format_graph",
    "PottsError",
    "GraphFormatError",
    "InvalidRootError",
    "BudgetExceededError",
    "UndefinedMeasureError",
    "ZeroRatioError",
    "BranchError",
    "PoleError",
    "DomainError",
    "StepTooLargeError",
    "CannotInterpolateError",
]
