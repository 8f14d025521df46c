from gapchain.oracles.bitgraph import BitGraph, bit_graph, components
from gapchain.oracles.clique import (
    CliqueWitness,
    format_witness,
    max_grouped_clique,
    naive_max_grouped_clique,
    parse_witness,
)
from gapchain.oracles.biclique import BicliqueWitness, max_grouped_biclique
from gapchain.oracles.densest import DensestWitness, densest_grouped_subgraph

__all__ = [
    "BitGraph",
    "bit_graph",
    "components",
    "CliqueWitness",
    "max_grouped_clique",
    "naive_max_grouped_clique",
    "format_witness",
    "parse_witness",
    "BicliqueWitness",
    "max_grouped_biclique",
    "DensestWitness",
    "densest_grouped_subgraph",
]
