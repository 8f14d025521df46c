from gapchain.pihchain.biclique import (
    LEFT,
    RIGHT,
    BicliqueInstance,
    CliqueBiclique,
    ExplicitBiclique,
    biclique_sides,
    clique_to_biclique,
    decode_biclique_to_clique,
    is_biclique,
    lift_clique,
)
from gapchain.pihchain.disperser import (
    Disperser,
    DisperserReport,
    disperser_ell,
    format_disperser,
    make_disperser,
    parse_disperser,
    verify_disperser,
    with_verification,
)
from gapchain.pihchain.compress import (
    CompressedBiclique,
    biclique_compress,
    compress_witness,
    covered_groups,
    decode_compressed_biclique,
)
from gapchain.pihchain.kst import kaa_free_edge_search, kst_bound, max_kaa_free_edges
from gapchain.pihchain.densest import (
    BicliqueDensest,
    biclique_to_densest,
    densest_completeness_value,
    densest_soundness_bound,
)

__all__ = [
    "LEFT",
    "RIGHT",
    "BicliqueInstance",
    "CliqueBiclique",
    "ExplicitBiclique",
    "biclique_sides",
    "clique_to_biclique",
    "decode_biclique_to_clique",
    "is_biclique",
    "lift_clique",
    "Disperser",
    "DisperserReport",
    "disperser_ell",
    "format_disperser",
    "make_disperser",
    "parse_disperser",
    "verify_disperser",
    "with_verification",
    "CompressedBiclique",
    "biclique_compress",
    "compress_witness",
    "covered_groups",
    "decode_compressed_biclique",
    "kaa_free_edge_search",
    "kst_bound",
    "max_kaa_free_edges",
    "BicliqueDensest",
    "biclique_to_densest",
    "densest_completeness_value",
    "densest_soundness_bound",
]
