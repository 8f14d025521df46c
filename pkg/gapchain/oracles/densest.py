"""Exact densest one-per-group selection."""
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

from gapchain import log
from gapchain.gapchain_globals import BUDGET_MATERIALIZE, BUDGET_ORACLE
from gapchain.graphs import Group, GroupedGraph, Vertex
from gapchain.oracles.bitgraph import BitGraph, bit_graph, popcount


@dataclass
class DensestWitness:
    edges: int
    vertices: Tuple[Vertex, ...]
    groups: Tuple[Group, ...]
    lower_bound_only: bool = False
    nodes: int = 0


class _NodeBudget(Exception):
    pass


class _DensestSearch:
    def __init__(self, bg: BitGraph, order: List[int], budget: int) -> None:
        self.bg = bg
        self.order = order
        self.budget = budget
        self.best = -1
        self.best_pick: Tuple[int, ...] = ()
        self.nodes = 0

    def run(self) -> bool:
        try:
            self._branch(0, 0, 0, ())
        except _NodeBudget:
            return True
        return False

    def _branch(self, pos: int, mask: int, edges: int, picked: Tuple[int, ...]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _NodeBudget()
        rest = self.order[pos:]
        if not rest:
            if edges > self.best:
                self.best, self.best_pick = edges, picked
            return
        # each remaining vertex gains at most its links into the current pick plus one
        # edge per other remaining group
        gain = sum(
            max(popcount(self.bg.adj[v] & mask) for v in self.bg.members[g]) for g in rest
        )
        if edges + gain + comb(len(rest), 2) <= self.best:
            return
        g = rest[0]
        for v in self.bg.members[g]:
            self._branch(
                pos + 1, mask | 1 << v, edges + popcount(self.bg.adj[v] & mask), picked + (v,)
            )


def densest_grouped_subgraph(
    graph: GroupedGraph,
    budget: int = BUDGET_ORACLE,
    materialize_budget: int = BUDGET_MATERIALIZE,
) -> DensestWitness:
    """
    Maximum number of edges induced by picking exactly one vertex in every group.

    Empty groups are left out of the selection.
    """
    bg = bit_graph(graph, budget=materialize_budget)
    order = [g for g in range(len(bg.groups)) if bg.members[g]]
    search = _DensestSearch(bg, order, budget)
    flagged = search.run()
    picked = search.best_pick
    witness = DensestWitness(
        max(search.best, 0),
        tuple(bg.vertices[v] for v in picked),
        tuple(bg.groups[bg.group_index[v]] for v in picked),
        lower_bound_only=flagged,
        nodes=search.nodes,
    )
    log.info(f"densest grouped subgraph: {witness.edges} edges, {search.nodes} nodes")
    return witness
