"""Disperser-based biclique compression and decoding."""
from itertools import product
from typing import Dict, Iterator, List, Sequence, Set, Tuple

from gapchain.exceptions import DimensionMismatch, PreconditionError, VerificationFailed
from gapchain.graphs import Group, Vertex
from gapchain.pihchain.biclique import LEFT, RIGHT, BicliqueInstance, SideVertex
from gapchain.pihchain.disperser import UNVERIFIED, Disperser

TupleVertex = Tuple[str, int, Tuple[Vertex, ...]]


class CompressedBiclique(BicliqueInstance):
    """
    Group i on each side stands for disperser subset I_i; its vertices are l-tuples
    with one source vertex from each group indexed by I_i on that side. A left and a
    right tuple are adjacent when their constituents form a K_{l,l} in the source.
    """

    def __init__(self, base: BicliqueInstance, disperser: Disperser) -> None:
        self.base = base
        self.disperser = disperser
        self._members: Dict[Tuple[str, int], Tuple[SideVertex, ...]] = {}
        self._cache: Dict[Tuple[SideVertex, SideVertex], bool] = {}

    @property
    def k(self) -> int:
        return self.disperser.k

    def _source_members(self, side: str, j: int) -> Tuple[SideVertex, ...]:
        key = (side, j)
        if key not in self._members:
            self._members[key] = tuple(self.base.vertices(key))
        return self._members[key]

    def vertices(self, group: Group) -> Iterator[TupleVertex]:
        side, i = group  # type: ignore[misc]
        subset = self.disperser.subsets[i]
        for parts in product(*(self._source_members(side, j) for j in subset)):
            yield (side, i, parts)

    def group_size(self, group: Group) -> int:
        side, i = group  # type: ignore[misc]
        size = 1
        for j in self.disperser.subsets[i]:
            size *= len(self._source_members(side, j))
        return size

    def _linked(self, a: SideVertex, b: SideVertex) -> bool:
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self.base.adjacent(a, b)
        return self._cache[key]

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        su, _, left = u  # type: ignore[misc]
        sw, _, right = w  # type: ignore[misc]
        if su == sw:
            return False
        if su != LEFT:
            left, right = right, left
        return all(self._linked(a, b) for a in left for b in right)

    def vertex_label(self, v: Vertex) -> str:
        return "|".join(self.base.vertex_label(a) for a in v[2])  # type: ignore[index]


def biclique_compress(b: BicliqueInstance, d: Disperser) -> CompressedBiclique:
    if d.verified == UNVERIFIED:
        raise PreconditionError("disperser must be verified before compression")
    if d.m != b.k:
        raise DimensionMismatch(f"disperser is over [{d.m}] but the instance has {b.k} groups")
    return CompressedBiclique(b, d)


def compress_witness(
    c: CompressedBiclique, left: Sequence[SideVertex], right: Sequence[SideVertex]
) -> Tuple[List[TupleVertex], List[TupleVertex]]:
    """Restrict a full K_{k,k} of the source to every disperser subset on both sides."""
    by_left = {v[1]: v for v in left}
    by_right = {v[1]: v for v in right}
    if len(by_left) != c.base.k or len(by_right) != c.base.k:
        raise PreconditionError("a full biclique with one vertex per group is required")
    subsets = c.disperser.subsets
    out_left = [(LEFT, i, tuple(by_left[j] for j in s)) for i, s in enumerate(subsets)]
    out_right = [(RIGHT, i, tuple(by_right[j] for j in s)) for i, s in enumerate(subsets)]
    return out_left, out_right


def decode_compressed_biclique(
    c: CompressedBiclique, left: Sequence[TupleVertex], right: Sequence[TupleVertex]
) -> Tuple[List[SideVertex], List[SideVertex]]:
    """
    Union of the constituents of a compressed biclique, one vertex per source group.

    When tuples disagree on a group the first constituent is kept; every constituent
    is linked to every constituent across, so the result is a biclique of the source
    instance. Raises VerificationFailed otherwise.
    """
    out: List[List[SideVertex]] = []
    for side_vertices in (left, right):
        chosen: Dict[int, SideVertex] = {}
        for _, _, parts in side_vertices:
            for part in parts:
                chosen.setdefault(part[1], part)
        out.append([chosen[j] for j in sorted(chosen)])
    lefts, rights = out
    for a in lefts:
        for b in rights:
            if not c.base.adjacent(a, b):
                raise VerificationFailed("decoded constituents are not a biclique")
    return lefts, rights


def covered_groups(vertices: Sequence[SideVertex]) -> Set[int]:
    return {v[1] for v in vertices}
