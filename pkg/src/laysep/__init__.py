"""Stack and queue layouts of graphs from layered separators."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    Layering,
    VertexSubsetMap,
    bfs_layering,
    bfs_tree,
    connected_components,
    induced_subgraph,
    validate_layering,
)
from .layout import (
    ChannelId,
    EdgeClass,
    Kind,
    LinearLayout,
    construct_queue_layout,
    construct_stack_layout,
)
from .separator import (
    ExactSeparatorProvider,
    PlanarSeparatorProvider,
    SeparatorCert,
    find_layered_separator_exact,
    find_min_ell_separator,
    planar_two_path_separator,
    verify_separator,
)
from .verify import check_bounds, check_layer_by_layer, check_queue_validity, check_stack_validity

__all__ = [
    "ChannelId",
    "EdgeClass",
    "ExactSeparatorProvider",
    "Graph",
    "Kind",
    "Layering",
    "LinearLayout",
    "PlanarSeparatorProvider",
    "SeparatorCert",
    "VertexSubsetMap",
    "bfs_layering",
    "bfs_tree",
    "check_bounds",
    "check_layer_by_layer",
    "check_queue_validity",
    "check_stack_validity",
    "connected_components",
    "construct_queue_layout",
    "construct_stack_layout",
    "find_layered_separator_exact",
    "find_min_ell_separator",
    "induced_subgraph",
    "planar_two_path_separator",
    "validate_layering",
]
