#!/usr/bin/env python
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapchain.exceptions import BudgetExceeded, ParseError
from gapchain.graphs import ExplicitGroupedGraph
from gapchain.oracles import (
    bit_graph,
    components,
    densest_grouped_subgraph,
    format_witness,
    max_grouped_biclique,
    max_grouped_clique,
    naive_max_grouped_clique,
    parse_witness,
)
from gapchain.pihchain import LEFT, ExplicitBiclique, clique_to_biclique


@st.composite
def grouped_graphs(draw):
    sizes = draw(st.lists(st.integers(min_value=1, max_value=2), min_size=1, max_size=5))
    groups = []
    offset = 0
    for s in sizes:
        groups.append(tuple(range(offset, offset + s)))
        offset += s
    group_of = {v: gi for gi, g in enumerate(groups) for v in g}
    pairs = [
        (u, w)
        for u in range(offset)
        for w in range(u + 1, offset)
        if group_of[u] != group_of[w]
    ]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return ExplicitGroupedGraph(groups, [e for e, keep in zip(pairs, chosen) if keep])


def test_planted_clique(planted_graph):
    witness = max_grouped_clique(planted_graph)
    assert witness.size == 4
    assert witness.vertices == (0, 2, 4, 6)
    assert witness.groups == (0, 1, 2, 3)
    assert not witness.lower_bound_only


def test_edgeless_graph():
    graph = ExplicitGroupedGraph([(0, 1), (2,)])
    assert max_grouped_clique(graph).size == 1
    assert max_grouped_clique(ExplicitGroupedGraph([])).size == 0


def test_components(planted_graph):
    graph = ExplicitGroupedGraph([(0,), (1,), (2,), (3,)], [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert components(bit_graph(graph)) == [[0, 1], [2, 3]]
    assert max_grouped_clique(graph).size == 2
    assert max_grouped_clique(graph, decompose=False).size == 2
    assert len(components(bit_graph(planted_graph))) == 1


def test_node_budget_gives_lower_bound(planted_graph):
    witness = max_grouped_clique(planted_graph, budget=2)
    assert witness.lower_bound_only
    assert planted_graph.is_clique(witness.vertices)


def test_materialize_budget(planted_graph):
    with pytest.raises(BudgetExceeded):
        max_grouped_clique(planted_graph, materialize_budget=4)


@settings(max_examples=40)
@given(grouped_graphs())
def test_oracle_matches_naive(graph):
    fast = max_grouped_clique(graph)
    slow = naive_max_grouped_clique(graph)
    assert fast.size == slow.size
    assert graph.is_clique(fast.vertices)
    assert max_grouped_clique(graph, decompose=False).size == slow.size


def test_witness_text(planted_graph):
    witness = max_grouped_clique(planted_graph)
    text = format_witness(planted_graph, witness)
    assert text == "witness clique 4\n1 0\n2 2\n3 4\n4 6\nend\n"
    assert parse_witness(text) == ("clique", 4, False, [(1, "0"), (2, "2"), (3, "4"), (4, "6")])
    flagged = text.replace("clique 4", "clique 4 lower-bound-only")
    assert parse_witness(flagged)[2]


def test_witness_parse_errors():
    for bad in (
        "",
        "witness clique\nend\n",
        "witness clique 1 maybe\n1 0\nend\n",
        "witness clique 2\n1 0\nend\n",
        "witness clique 1\nx 0\nend\n",
        "witness clique 1\n1 0\n",
    ):
        with pytest.raises(ParseError):
            parse_witness(bad)


def test_biclique_oracle(planted_graph):
    witness = max_grouped_biclique(clique_to_biclique(planted_graph))
    assert witness.size == (4, 4)
    assert all(g[0] == LEFT for g in witness.left_groups)


def test_biclique_oracle_without_cross_edges():
    graph = ExplicitGroupedGraph([(0,), (1,), (2,), (3,)])
    witness = max_grouped_biclique(ExplicitBiclique(graph, ("L", "L", "R", "R")))
    assert witness.size == (0, 0)


def test_densest_oracle(planted_graph):
    witness = densest_grouped_subgraph(planted_graph)
    assert witness.edges == 6
    assert witness.vertices == (0, 2, 4, 6)
    sparse = ExplicitGroupedGraph([(0, 1), (2, 3), (4,)], [(1, 2)])
    assert densest_grouped_subgraph(sparse).edges == 1
