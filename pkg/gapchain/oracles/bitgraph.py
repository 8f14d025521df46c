"""Bitmask snapshot of a grouped graph used by the exact searches."""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from gapchain import log
from gapchain.gapchain_globals import BUDGET_ENUM, BUDGET_MATERIALIZE
from gapchain.graphs import Group, GroupedGraph, Vertex
from gapchain.utilities import check_budget


@dataclass
class BitGraph:
    """
    Vertices numbered 0..n-1 group by group in canonical order.

    adj[v] is the bitmask of neighbours of v, group_mask[g] the bitmask of group g.
    """

    groups: Tuple[Group, ...]
    members: Tuple[Tuple[int, ...], ...]
    vertices: Tuple[Vertex, ...]
    group_index: Tuple[int, ...]
    adj: Tuple[int, ...]
    group_mask: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def fully_linked(self, gi: int, gj: int) -> bool:
        """True when every vertex of gi is adjacent to every vertex of gj."""
        target = self.group_mask[gj]
        return all(self.adj[v] & target == target for v in self.members[gi])


def bit_graph(
    graph: GroupedGraph,
    groups: Sequence[Group] = (),
    budget: int = BUDGET_MATERIALIZE,
    pair_budget: int = BUDGET_ENUM,
) -> BitGraph:
    """Query every cross-group pair once; `groups` restricts to a subset in the given order."""
    chosen = tuple(groups) if groups else tuple(graph.groups())
    check_budget("oracle vertices", sum(graph.group_size(g) for g in chosen), budget)
    vertices: List[Vertex] = []
    members: List[Tuple[int, ...]] = []
    group_index: List[int] = []
    for gi, g in enumerate(chosen):
        ids = []
        for v in graph.vertices(g):
            ids.append(len(vertices))
            vertices.append(v)
            group_index.append(gi)
        members.append(tuple(ids))
    n = len(vertices)
    check_budget("oracle vertex pairs", n * (n - 1) // 2, pair_budget)
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if group_index[a] != group_index[b] and graph.adjacent(vertices[a], vertices[b]):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    masks = tuple(sum(1 << v for v in ids) for ids in members)
    log.debug(f"bit graph: {len(chosen)} groups, {n} vertices")
    return BitGraph(chosen, tuple(members), tuple(vertices), tuple(group_index), tuple(adj), masks)


def components(bg: BitGraph) -> List[List[int]]:
    """
    Groups split by the constraint relation "not fully linked".

    A maximum clique is the union of maximum cliques of the components, since every
    pair of groups in different components is fully linked.
    """
    k = len(bg.groups)
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for j in range(i + 1, k):
            if find(i) != find(j) and not bg.fully_linked(i, j):
                parent[find(i)] = find(j)
    comps: Dict[int, List[int]] = {}
    for i in range(k):
        comps.setdefault(find(i), []).append(i)
    return sorted(comps.values())


def popcount(x: int) -> int:
    return bin(x).count("1")
