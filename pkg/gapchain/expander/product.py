"""
Gap-amplifying graph products.

The walk product has one group per labeled walk of the expander H over the source
groups; the tensor product uses every sequence of t source groups. A product vertex
picks one source vertex per step, and two product vertices in different groups are
adjacent when all their source vertices together form a clique.
"""
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from gapchain.exceptions import DimensionMismatch, PreconditionError
from gapchain.expander.regular import RegularGraph
from gapchain.expander.walks import WalkIndex, enumerate_walks, walk_count
from gapchain.graphs import Group, GroupedGraph, Vertex

PRODUCT_KINDS = ("walk", "tensor")

ProductGroup = Union[WalkIndex, Tuple[int, ...]]


@dataclass(frozen=True, order=True)
class ProductVertex:
    group: ProductGroup
    parts: Tuple[Vertex, ...]


class ProductGraph(GroupedGraph):
    def __init__(
        self, base: GroupedGraph, h: Optional[RegularGraph], t: int, kind: str = "walk"
    ) -> None:
        if kind not in PRODUCT_KINDS:
            raise PreconditionError(f"unknown product kind {kind!r}")
        if t < 1:
            raise PreconditionError(f"t must be at least 1, got {t}")
        self.base = base
        self.h = h
        self.t = t
        self.kind = kind
        self.base_groups: List[Group] = list(base.groups())
        if kind == "walk" and h is None:
            raise PreconditionError("the walk product needs an expander")
        if kind == "walk" and h.n != len(self.base_groups):  # type: ignore[union-attr]
            raise DimensionMismatch(
                f"expander has {h.n} vertices but the graph has {len(self.base_groups)} groups"
            )
        self._members: Dict[int, Tuple[Vertex, ...]] = {}
        self._pair_cache: Dict[Tuple[Vertex, Vertex], bool] = {}

    @property
    def group_count(self) -> int:
        if self.kind == "walk":
            return walk_count(self.h, self.t)  # type: ignore[arg-type]
        return len(self.base_groups) ** self.t

    def groups(self) -> Iterator[ProductGroup]:
        if self.kind == "walk":
            return enumerate_walks(self.h, self.t)  # type: ignore[arg-type]
        return product(range(len(self.base_groups)), repeat=self.t)

    def steps(self, group: ProductGroup) -> Tuple[int, ...]:
        return group.vertices if isinstance(group, WalkIndex) else tuple(group)

    def members(self, c: int) -> Tuple[Vertex, ...]:
        if c not in self._members:
            self._members[c] = tuple(self.base.vertices(self.base_groups[c]))
        return self._members[c]

    def vertices(self, group: ProductGroup) -> Iterator[ProductVertex]:
        for parts in product(*(self.members(c) for c in self.steps(group))):
            yield ProductVertex(group, parts)

    def group_size(self, group: ProductGroup) -> int:
        size = 1
        for c in self.steps(group):
            size *= len(self.members(c))
        return size

    def group_of(self, v: ProductVertex) -> ProductGroup:
        return v.group

    def _base_adjacent(self, a: Vertex, b: Vertex) -> bool:
        key = (a, b)
        if key not in self._pair_cache:
            self._pair_cache[key] = self._pair_cache[(b, a)] = self.base.adjacent(a, b)
        return self._pair_cache[key]

    def adjacent(self, u: ProductVertex, w: ProductVertex) -> bool:
        if u.group == w.group:
            return False
        union = list(dict.fromkeys(u.parts + w.parts))
        return all(self._base_adjacent(a, b) for a, b in combinations(union, 2))

    def vertex_label(self, v: ProductVertex) -> str:
        tag = str(v.group) if isinstance(v.group, WalkIndex) else ".".join(map(str, v.group))
        return tag + "=" + "|".join(self.base.vertex_label(a) for a in v.parts)


def graph_product(
    base: GroupedGraph, h: Optional[RegularGraph], t: int, kind: str = "walk"
) -> ProductGraph:
    return ProductGraph(base, h, t, kind)


def product_witness(prod: ProductGraph, clique: Sequence[Vertex]) -> List[ProductVertex]:
    """
    Map a full clique of the base graph (one vertex per group) into the product.

    Group (c_1..c_t) receives (v_c1, ..., v_ct).
    """
    by_group = {prod.base.group_of(v): v for v in clique}
    if len(by_group) != len(prod.base_groups) or set(by_group) != set(prod.base_groups):
        raise PreconditionError("clique must pick exactly one vertex in every group")
    chosen = [by_group[g] for g in prod.base_groups]
    return [
        ProductVertex(group, tuple(chosen[c] for c in prod.steps(group)))
        for group in prod.groups()
    ]
