"""From a grouped biclique instance to Densest 2k-Subgraph."""
from fractions import Fraction
from math import comb
from typing import Iterator, List, Union

from gapchain.graphs import Group, GroupedGraph, Vertex
from gapchain.pihchain.biclique import BicliqueInstance


class BicliqueDensest(GroupedGraph):
    """
    The 2k groups of a biclique instance with every same-side pair of vertices in
    different groups linked; cross-side edges are those of the instance.
    """

    def __init__(self, base: BicliqueInstance) -> None:
        self.base = base
        self._groups: List[Group] = list(base.groups())

    @property
    def group_count(self) -> int:
        return len(self._groups)

    def groups(self) -> Iterator[Group]:
        return iter(self._groups)

    def vertices(self, group: Group) -> Iterator[Vertex]:
        return self.base.vertices(group)

    def group_size(self, group: Group) -> int:
        return self.base.group_size(group)

    def group_of(self, v: Vertex) -> Group:
        return self.base.group_of(v)

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        gu, gw = self.group_of(u), self.group_of(w)
        if gu == gw:
            return False
        if self.base.side(gu) == self.base.side(gw):
            return True
        return self.base.adjacent(u, w)

    def vertex_label(self, v: Vertex) -> str:
        return self.base.vertex_label(v)


def biclique_to_densest(b: BicliqueInstance) -> BicliqueDensest:
    return BicliqueDensest(b)


def densest_completeness_value(k: int) -> int:
    """C(2k, 2): a K_{k,k} plus both sides' internal links."""
    return comb(2 * k, 2)


def densest_soundness_bound(k: int, eps: Union[float, Fraction]) -> Union[float, Fraction]:
    """eps * k^2 + 2 C(k, 2) once the cross edges are at most eps * k^2."""
    return eps * k * k + 2 * comb(k, 2)
