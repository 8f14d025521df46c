"""Exact maximum balanced grouped biclique."""
from dataclasses import dataclass
from typing import List, Tuple

from gapchain import log
from gapchain.exceptions import VerificationFailed
from gapchain.gapchain_globals import BUDGET_MATERIALIZE, BUDGET_ORACLE
from gapchain.graphs import BipartiteGroupedGraph, Group, Vertex
from gapchain.oracles.bitgraph import BitGraph, bit_graph


@dataclass
class BicliqueWitness:
    """Left and right selections of equal size, at most one vertex per group."""

    left: Tuple[Vertex, ...]
    right: Tuple[Vertex, ...]
    left_groups: Tuple[Group, ...]
    right_groups: Tuple[Group, ...]
    lower_bound_only: bool = False
    nodes: int = 0

    @property
    def size(self) -> Tuple[int, int]:
        return (len(self.left), len(self.right))


class _NodeBudget(Exception):
    pass


class _BicliqueSearch:
    def __init__(self, bg: BitGraph, left: List[int], right: List[int], budget: int) -> None:
        self.bg = bg
        self.left = left
        self.right = right
        self.budget = budget
        self.best = 0
        self.best_left: Tuple[int, ...] = ()
        self.best_cand = 0
        self.nodes = 0
        self.all_right = sum(bg.group_mask[g] for g in right)

    def covered(self, cand: int) -> int:
        return sum(1 for g in self.right if cand & self.bg.group_mask[g])

    def run(self) -> bool:
        try:
            self._branch(0, self.all_right, ())
        except _NodeBudget:
            return True
        return False

    def _branch(self, pos: int, cand: int, chosen: Tuple[int, ...]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _NodeBudget()
        cover = self.covered(cand)
        value = min(len(chosen), cover)
        if value > self.best:
            self.best, self.best_left, self.best_cand = value, chosen, cand
        if min(len(chosen) + len(self.left) - pos, cover) <= self.best or pos == len(self.left):
            return
        g = self.left[pos]
        for v in self.bg.members[g]:
            self._branch(pos + 1, cand & self.bg.adj[v], chosen + (v,))
        self._branch(pos + 1, cand, chosen)


def max_grouped_biclique(
    graph: BipartiteGroupedGraph,
    budget: int = BUDGET_ORACLE,
    materialize_budget: int = BUDGET_MATERIALIZE,
) -> BicliqueWitness:
    """
    Maximise min(|L|, |R|) over bicliques picking at most one vertex per group.

    The witness is balanced: both sides are trimmed to the optimum. A graph without
    any cross edge yields (0, 0).
    """
    bg = bit_graph(graph, budget=materialize_budget)
    sides = [graph.side(g) for g in bg.groups]
    left = [i for i, s in enumerate(sides) if s == "L"]
    right = [i for i, s in enumerate(sides) if s == "R"]
    search = _BicliqueSearch(bg, left, right, budget)
    flagged = search.run()
    s = search.best
    lefts = search.best_left[:s]
    rights: List[int] = []
    for g in right:
        hits = search.best_cand & bg.group_mask[g]
        if hits and len(rights) < s:
            rights.append(min(v for v in bg.members[g] if hits >> v & 1))
    witness = BicliqueWitness(
        tuple(bg.vertices[v] for v in lefts),
        tuple(bg.vertices[v] for v in rights),
        tuple(bg.groups[bg.group_index[v]] for v in lefts),
        tuple(bg.groups[bg.group_index[v]] for v in rights),
        lower_bound_only=flagged,
        nodes=search.nodes,
    )
    for u in witness.left:
        for w in witness.right:
            if not graph.adjacent(u, w):
                msg = "oracle returned a selection that is not a biclique"
                raise VerificationFailed(msg, witness)
    log.info(f"max grouped biclique: {witness.size}, {search.nodes} nodes")
    return witness
