"""
Grouped (multipartite) graphs.

A grouped graph partitions its vertices into groups, each an independent set, and
answers adjacency through an oracle. Implicit graphs (the CSP graph, expander
products, compressed bicliques) only enumerate on demand; `materialize` turns any of
them into an `ExplicitGroupedGraph` below a vertex budget.
"""
from abc import ABC, abstractmethod
from itertools import combinations
from typing import (
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

from gapchain import log
from gapchain.exceptions import ParseError, PreconditionError
from gapchain.gapchain_globals import BUDGET_ENUM, BUDGET_MATERIALIZE
from gapchain.utilities import check_budget

Vertex = Hashable
Group = Hashable


class GroupedGraph(ABC):
    """Abstract grouped graph with an adjacency oracle."""

    @property
    @abstractmethod
    def group_count(self) -> int:
        pass

    @abstractmethod
    def groups(self) -> Iterator[Group]:
        """Group ids in canonical order."""
        pass

    @abstractmethod
    def vertices(self, group: Group) -> Iterator[Vertex]:
        """Vertices of one group in canonical order."""
        pass

    @abstractmethod
    def group_of(self, v: Vertex) -> Group:
        pass

    @abstractmethod
    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        pass

    def group_size(self, group: Group) -> int:
        return sum(1 for _ in self.vertices(group))

    def vertex_count(self) -> int:
        return sum(self.group_size(g) for g in self.groups())

    def vertex_label(self, v: Vertex) -> str:
        return repr(v).replace(" ", "")

    def is_clique(self, vs: Sequence[Vertex]) -> bool:
        """Distinct groups and pairwise adjacent."""
        seen = set()
        for v in vs:
            g = self.group_of(v)
            if g in seen:
                return False
            seen.add(g)
        return all(self.adjacent(u, w) for u, w in combinations(vs, 2))

    def materialize(
        self, budget: int = BUDGET_MATERIALIZE, pair_budget: int = BUDGET_ENUM
    ) -> "ExplicitGroupedGraph":
        """Enumerate every vertex and edge; vertices get integer ids in canonical order."""
        check_budget("graph vertices", self.vertex_count(), budget)
        members: List[List[Vertex]] = [list(self.vertices(g)) for g in self.groups()]
        total = sum(len(m) for m in members)
        check_budget("graph vertex pairs", total * (total - 1) // 2, pair_budget)
        ids: List[Tuple[int, ...]] = []
        labels: Dict[int, str] = {}
        flat: List[Tuple[int, Vertex]] = []
        next_id = 0
        for gi, group in enumerate(members):
            row = []
            for v in group:
                labels[next_id] = self.vertex_label(v)
                flat.append((gi, v))
                row.append(next_id)
                next_id += 1
            ids.append(tuple(row))
        edges = []
        for a in range(len(flat)):
            ga, u = flat[a]
            for b in range(a + 1, len(flat)):
                gb, w = flat[b]
                if ga != gb and self.adjacent(u, w):
                    edges.append((a, b))
        log.debug(f"materialized {total} vertices and {len(edges)} edges")
        return ExplicitGroupedGraph(ids, edges, labels)

    def find_intra_group_edge(self) -> Optional[Tuple[Vertex, Vertex]]:
        """A pair inside one group reported adjacent, if any (should never exist)."""
        for g in self.groups():
            for u, w in combinations(list(self.vertices(g)), 2):
                if self.adjacent(u, w) or self.adjacent(w, u):
                    return (u, w)
        return None


class ExplicitGroupedGraph(GroupedGraph):
    """Grouped graph with integer vertex ids and a stored edge set."""

    def __init__(
        self,
        groups: Sequence[Sequence[int]],
        edges: Iterable[Tuple[int, int]] = (),
        labels: Optional[Dict[int, str]] = None,
    ) -> None:
        self._groups: Tuple[Tuple[int, ...], ...] = tuple(tuple(g) for g in groups)
        self._group_of: Dict[int, int] = {}
        for gi, members in enumerate(self._groups):
            for v in members:
                if v in self._group_of:
                    raise PreconditionError(f"vertex {v} appears in two groups")
                self._group_of[v] = gi
        self._adj: Dict[int, set] = {v: set() for v in self._group_of}
        for u, w in edges:
            if u not in self._group_of or w not in self._group_of:
                raise PreconditionError(f"edge ({u}, {w}) uses an unknown vertex")
            if self._group_of[u] == self._group_of[w]:
                raise PreconditionError(f"edge ({u}, {w}) lies inside a group")
            self._adj[u].add(w)
            self._adj[w].add(u)
        self.labels = dict(labels) if labels else {}

    @classmethod
    def from_sizes(
        cls, sizes: Sequence[int], edges: Iterable[Tuple[Tuple[int, int], Tuple[int, int]]]
    ) -> "ExplicitGroupedGraph":
        """Build from group sizes and edges given as ((group, index), (group, index))."""
        groups = []
        offset = 0
        for s in sizes:
            groups.append(tuple(range(offset, offset + s)))
            offset += s
        flat_edges = [(groups[a][i], groups[b][j]) for (a, i), (b, j) in edges]
        return cls(groups, flat_edges)

    @property
    def group_count(self) -> int:
        return len(self._groups)

    def groups(self) -> Iterator[int]:
        return iter(range(len(self._groups)))

    def vertices(self, group: Group) -> Iterator[int]:
        return iter(self._groups[group])  # type: ignore[index]

    def members(self, group: int) -> Tuple[int, ...]:
        return self._groups[group]

    def group_size(self, group: Group) -> int:
        return len(self._groups[group])  # type: ignore[index]

    def group_of(self, v: Vertex) -> int:
        return self._group_of[v]  # type: ignore[index]

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        return w in self._adj[u]  # type: ignore[index]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return frozenset(self._adj[v])

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((u, w) for u, ns in self._adj.items() for w in ns if u < w)

    def vertex_label(self, v: Vertex) -> str:
        return self.labels.get(v, str(v))  # type: ignore[call-overload]

    def materialize(
        self, budget: int = BUDGET_MATERIALIZE, pair_budget: int = BUDGET_ENUM
    ) -> "ExplicitGroupedGraph":
        return self


class SubGraph(GroupedGraph):
    """View of a grouped graph restricted to some of its groups."""

    def __init__(self, parent: GroupedGraph, groups: Sequence[Group]) -> None:
        self.parent = parent
        self._groups = tuple(groups)

    @property
    def group_count(self) -> int:
        return len(self._groups)

    def groups(self) -> Iterator[Group]:
        return iter(self._groups)

    def vertices(self, group: Group) -> Iterator[Vertex]:
        return self.parent.vertices(group)

    def group_size(self, group: Group) -> int:
        return self.parent.group_size(group)

    def group_of(self, v: Vertex) -> Group:
        return self.parent.group_of(v)

    def adjacent(self, u: Vertex, w: Vertex) -> bool:
        return self.parent.adjacent(u, w)

    def vertex_label(self, v: Vertex) -> str:
        return self.parent.vertex_label(v)


def format_graph(graph: ExplicitGroupedGraph, sides: Optional[Sequence[str]] = None) -> str:
    """Text export: `groups k`, one block per group, then the edge list."""
    lines = [f"groups {graph.group_count}"]
    for gi in graph.groups():
        members = graph.members(gi)
        tag = f" {sides[gi]}" if sides else ""
        lines.append(f"group {gi + 1} {len(members)}{tag}")
        lines.extend(f"{v} {graph.vertex_label(v)}" for v in members)
    edges = graph.edges()
    lines.append(f"edges {len(edges)}")
    lines.extend(f"{u} {w}" for u, w in edges)
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Tuple[ExplicitGroupedGraph, Optional[Tuple[str, ...]]]:
    """Parse `format_graph` output; returns the graph and the side tags if present."""
    lines = text.rstrip("\n").splitlines()

    def fields(pos: int, key: str) -> List[str]:
        if pos >= len(lines):
            raise ParseError(f"unexpected end of input, expected {key!r}", pos)
        parts = lines[pos].split()
        if not parts or parts[0] != key:
            raise ParseError(f"expected {key!r}, found {lines[pos]!r}", pos + 1)
        return parts[1:]

    def number(text: str, pos: int) -> int:
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"expected an integer, found {text!r}", pos + 1)

    head = fields(0, "groups")
    if len(head) != 1:
        raise ParseError("malformed 'groups' header", 1)
    k = number(head[0], 0)
    pos = 1
    groups = []
    labels: Dict[int, str] = {}
    sides: List[str] = []
    for gi in range(k):
        header = fields(pos, "group")
        if len(header) not in (2, 3) or number(header[0], pos) != gi + 1:
            raise ParseError(f"malformed group header {lines[pos]!r}", pos + 1)
        if len(header) == 3:
            sides.append(header[2])
        count = number(header[1], pos)
        pos += 1
        members = []
        for _ in range(count):
            if pos >= len(lines):
                raise ParseError(f"group {gi + 1} is truncated", pos)
            parts = lines[pos].split()
            if len(parts) != 2:
                raise ParseError(f"malformed vertex line {lines[pos]!r}", pos + 1)
            v = number(parts[0], pos)
            labels[v] = parts[1]
            members.append(v)
            pos += 1
        groups.append(members)
    if sides and len(sides) != k:
        raise ParseError("side tags must be given for every group or none", pos)
    head = fields(pos, "edges")
    n_edges = number(head[0], pos) if len(head) == 1 else -1
    if n_edges < 0:
        raise ParseError("malformed 'edges' header", pos + 1)
    pos += 1
    edges = []
    for _ in range(n_edges):
        if pos >= len(lines):
            raise ParseError("edge list is truncated", pos)
        parts = lines[pos].split()
        if len(parts) != 2:
            raise ParseError(f"malformed edge line {lines[pos]!r}", pos + 1)
        edges.append((number(parts[0], pos), number(parts[1], pos)))
        pos += 1
    fields(pos, "end")
    if pos + 1 != len(lines):
        raise ParseError("trailing data after graph", pos + 2)
    try:
        graph = ExplicitGroupedGraph(groups, edges, labels)
    except PreconditionError as e:
        raise ParseError(str(e), pos + 1)
    return graph, (tuple(sides) if sides else None)


class BipartiteGroupedGraph(GroupedGraph):
    """Grouped graph whose groups sit on a left ("L") or right ("R") side."""

    @abstractmethod
    def side(self, group: Group) -> str:
        pass

    def sides(self) -> Tuple[str, ...]:
        return tuple(self.side(g) for g in self.groups())
