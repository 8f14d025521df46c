from gapchain.expander.regular import (
    RegularGraph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    format_regular,
    parse_regular,
    random_regular,
)
from gapchain.expander.spectral import SpectralEstimate, spectral_lambda
from gapchain.expander.walks import (
    WalkIndex,
    enumerate_walks,
    soundness_bound,
    tensor_soundness_bound,
    walk_bound,
    walk_count,
    walk_from,
    walk_hitting_fraction,
)
from gapchain.expander.product import (
    PRODUCT_KINDS,
    ProductGraph,
    ProductVertex,
    graph_product,
    product_witness,
)

__all__ = [
    "RegularGraph",
    "complete_graph",
    "cycle_graph",
    "disjoint_union",
    "format_regular",
    "parse_regular",
    "random_regular",
    "SpectralEstimate",
    "spectral_lambda",
    "WalkIndex",
    "enumerate_walks",
    "soundness_bound",
    "tensor_soundness_bound",
    "walk_bound",
    "walk_count",
    "walk_from",
    "walk_hitting_fraction",
    "PRODUCT_KINDS",
    "ProductGraph",
    "ProductVertex",
    "graph_product",
    "product_witness",
]
