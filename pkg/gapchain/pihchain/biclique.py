"""Grouped bipartite instances and the clique to biclique step."""
from abc import abstractmethod
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from gapchain.exceptions import PreconditionError, VerificationFailed
from gapchain.graphs import (
    BipartiteGroupedGraph,
    ExplicitGroupedGraph,
    Group,
    GroupedGraph,
    Vertex,
)

LEFT = "L"
RIGHT = "R"

SideGroup = Tuple[str, int]
SideVertex = Tuple[str, int, Vertex]


class BicliqueInstance(BipartiteGroupedGraph):
    """k left groups ("L", i) and k right groups ("R", i); no same-side edges."""

    @property
    @abstractmethod
    def k(self) -> int:
        pass

    @property
    def group_count(self) -> int:
        return 2 * self.k

    def groups(self) -> Iterator[SideGroup]:
        for side in (LEFT, RIGHT):
            for i in range(self.k):
                yield (side, i)

    def side(self, group: Group) -> str:
        return group[0]  # type: ignore[index]

    def group_of(self, v: Vertex) -> SideGroup:
        return (v[0], v[1])  # type: ignore[index]


class CliqueBiclique(BicliqueInstance):
    """
    U_i = W_i = V_i. A left and a right vertex in different groups are adjacent when
    they are adjacent in the source graph; in the same group when they are the same
    source vertex.
    """

    def __init__(self, source: GroupedGraph) -> None:
        self.source = source
        self.source_groups: List[Group] = list(source.groups())

    @property
    def k(self) -> int:
        return len(self.source_groups)

    def vertices(self, group: Group) -> Iterator[SideVertex]:
        side, i = group  # type: ignore[misc]
        for v in self.source.vertices(self.source_groups[i]):
            yield (side, i, v)

    def group_size(self, group: Group) -> int:
        return self.source.group_size(self.source_groups[group[1]])  # type: ignore[index]

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        su, iu, a = u  # type: ignore[misc]
        sw, iw, b = w  # type: ignore[misc]
        if su == sw:
            return False
        if iu == iw:
            return bool(a == b)
        return self.source.adjacent(a, b)

    def vertex_label(self, v: Vertex) -> str:
        return self.source.vertex_label(v[2])  # type: ignore[index]


def clique_to_biclique(graph: GroupedGraph) -> CliqueBiclique:
    return CliqueBiclique(graph)


class ExplicitBiclique(BicliqueInstance):
    """A stored bipartite grouped graph, e.g. read back from an export with side tags."""

    def __init__(self, graph: ExplicitGroupedGraph, sides: Sequence[str]) -> None:
        if len(sides) != graph.group_count:
            raise PreconditionError("one side tag per group is required")
        lefts = [g for g, s in zip(graph.groups(), sides) if s == LEFT]
        rights = [g for g, s in zip(graph.groups(), sides) if s == RIGHT]
        if len(lefts) != len(rights) or len(lefts) + len(rights) != len(sides):
            raise PreconditionError("sides must be 'L' or 'R' with equally many groups")
        self.graph = graph
        self._index: Dict[SideGroup, int] = {}
        for i, g in enumerate(lefts):
            self._index[(LEFT, i)] = g
        for i, g in enumerate(rights):
            self._index[(RIGHT, i)] = g
        side_of = {g: s for g, s in zip(graph.groups(), sides)}
        for u, w in graph.edges():
            if side_of[graph.group_of(u)] == side_of[graph.group_of(w)]:
                raise PreconditionError(f"edge ({u}, {w}) joins two vertices on one side")
        self._k = len(lefts)

    @property
    def k(self) -> int:
        return self._k

    def vertices(self, group: Group) -> Iterator[SideVertex]:
        side, i = group  # type: ignore[misc]
        for v in self.graph.members(self._index[(side, i)]):
            yield (side, i, v)

    def group_size(self, group: Group) -> int:
        return len(self.graph.members(self._index[group]))  # type: ignore[index]

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        return self.graph.adjacent(u[2], w[2])  # type: ignore[index]

    def vertex_label(self, v: Vertex) -> str:
        return self.graph.vertex_label(v[2])  # type: ignore[index]


def biclique_sides(b: BicliqueInstance) -> Tuple[str, ...]:
    return tuple(b.side(g) for g in b.groups())


def decode_biclique_to_clique(
    b: CliqueBiclique, left: Iterable[SideVertex], right: Iterable[SideVertex]
) -> List[Vertex]:
    """
    Clique of the source graph from a biclique of `clique_to_biclique`.

    Indices covered on both sides carry the same source vertex, and those vertices are
    pairwise adjacent in the source, so the clique has at least |L| + |R| - k vertices.
    """
    lefts = {i: v for _, i, v in left}
    rights = {i: v for _, i, v in right}
    shared = sorted(set(lefts) & set(rights))
    clique = []
    for i in shared:
        if lefts[i] != rights[i]:
            raise VerificationFailed(f"group {i} holds different vertices on the two sides")
        clique.append(lefts[i])
    if not b.source.is_clique(clique):
        raise VerificationFailed("decoded vertices are not a clique in the source graph")
    return clique


def is_biclique(b: BicliqueInstance, left: Sequence[Vertex], right: Sequence[Vertex]) -> bool:
    lg = [b.group_of(v) for v in left]
    rg = [b.group_of(v) for v in right]
    if len(set(lg)) != len(lg) or len(set(rg)) != len(rg):
        return False
    if any(g[0] != LEFT for g in lg) or any(g[0] != RIGHT for g in rg):
        return False
    return all(b.adjacent(u, w) for u in left for w in right)


def lift_clique(
    b: CliqueBiclique, clique: Sequence[Vertex]
) -> Tuple[List[SideVertex], List[SideVertex]]:
    """The biclique of `clique_to_biclique` picking the same source clique on both sides."""
    index = {g: i for i, g in enumerate(b.source_groups)}
    picks = sorted(((index[b.source.group_of(v)], v) for v in clique), key=lambda x: x[0])
    return [(LEFT, i, v) for i, v in picks], [(RIGHT, i, v) for i, v in picks]
