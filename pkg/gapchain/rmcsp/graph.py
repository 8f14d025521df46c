"""
The three-type grouped graph built from an RM CSP instance.

Type-1 groups are LD tests (2 copies each), type-2 groups are LA/LB tests (p^k copies
each) and type-3 groups are variables (4p^2k copies each). Test groups hold the
satisfying local assignments of their test; variable groups hold every value in F^l.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from gapchain import log
from gapchain.exceptions import CompletenessError, ParseError, PreconditionError
from gapchain.graphs import GroupedGraph, SubGraph
from gapchain.rmcsp.checks import (
    Assignment,
    RmFamily,
    RmTest,
    check_test,
    intended_assignment,
    local_solution_count,
    local_solutions,
    make_test,
)
from gapchain.rmcsp.instance import Point, RmCspInstance, Value

TEST_FAMILIES = (RmFamily.LOW_DEGREE, RmFamily.LINEARITY_ALPHA, RmFamily.LINEARITY_BETA)
VARIABLE = "V"


def _digits(rank: int, base: int, width: int) -> Tuple[int, ...]:
    out = []
    for _ in range(width):
        rank, r = divmod(rank, base)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True, order=True)
class RmGroup:
    vtype: int
    kind: str
    anchor: Tuple[int, ...]
    copy: int

    @property
    def underlying(self) -> Tuple[str, Tuple[int, ...]]:
        return (self.kind, self.anchor)


@dataclass(frozen=True, order=True)
class CliqueVertex:
    """A group id plus its local assignment, one F^l value per variable of the group."""

    group: RmGroup
    payload: Tuple[Value, ...]


class RmCliqueGraph(GroupedGraph):
    """Implicit grouped graph with the CSP adjacency rules as its oracle."""

    def __init__(self, inst: RmCspInstance) -> None:
        self.inst = inst
        p, k = inst.p, inst.k
        self.copies = {1: 2, 2: p**k, 3: 4 * p ** (2 * k)}
        self._test_cache: Dict[Tuple[str, Tuple[int, ...]], RmTest] = {}

    @property
    def group_count(self) -> int:
        return self.inst.group_count()

    def vertex_bound(self) -> int:
        p, k, ell = self.inst.p, self.inst.k, self.inst.ell
        return 2 * p ** (4 * k + 4 * ell) + 2 * p ** (4 * k + 2 * ell) + 4 * p ** (4 * k + ell)

    def test_of(self, group: RmGroup) -> Optional[RmTest]:
        if group.kind == VARIABLE:
            return None
        key = group.underlying
        if key not in self._test_cache:
            self._test_cache[key] = make_test(self.inst, RmFamily(group.kind), group.anchor)
        return self._test_cache[key]

    def variables_of(self, group: RmGroup) -> Tuple[Point, ...]:
        t = self.test_of(group)
        return (group.anchor,) if t is None else t.variables

    def _span(self, vtype: int) -> int:
        p, k = self.inst.p, self.inst.k
        return {1: 2, 2: 2, 3: 4}[vtype] * p ** (4 * k)

    def group_at(self, index: int) -> RmGroup:
        """Group by canonical index: type 1, then type 2 (LA before LB), then type 3."""
        p, k = self.inst.p, self.inst.k
        if not 0 <= index < self.group_count:
            raise PreconditionError(f"group index {index} outside [0, {self.group_count})")
        offset = 0
        for vtype, kinds, width in (
            (1, (RmFamily.LOW_DEGREE.value,), 4 * k),
            (2, (RmFamily.LINEARITY_ALPHA.value, RmFamily.LINEARITY_BETA.value), 3 * k),
            (3, (VARIABLE,), 2 * k),
        ):
            span = self._span(vtype)
            if index < offset + span:
                local = index - offset
                per_kind = span // len(kinds)
                kind = kinds[local // per_kind]
                local %= per_kind
                anchor_rank, copy = divmod(local, self.copies[vtype])
                anchor = _digits(anchor_rank, p, width)
                return RmGroup(vtype, kind, anchor, copy)
            offset += span
        raise PreconditionError(f"group index {index} not found")

    def groups(self) -> Iterator[RmGroup]:
        p, k = self.inst.p, self.inst.k
        for vtype, kinds, width in (
            (1, (RmFamily.LOW_DEGREE.value,), 4 * k),
            (2, (RmFamily.LINEARITY_ALPHA.value, RmFamily.LINEARITY_BETA.value), 3 * k),
            (3, (VARIABLE,), 2 * k),
        ):
            for kind in kinds:
                for anchor in product(range(p), repeat=width):
                    for copy in range(self.copies[vtype]):
                        yield RmGroup(vtype, kind, anchor, copy)

    def vertices(self, group: RmGroup) -> Iterator[CliqueVertex]:
        t = self.test_of(group)
        if t is None:
            for value in self.inst.values():
                yield CliqueVertex(group, (value,))
            return
        for payload in local_solutions(self.inst, t):
            yield CliqueVertex(group, payload)

    def group_size(self, group: RmGroup) -> int:
        t = self.test_of(group)
        if t is None:
            return self.inst.p**self.inst.ell
        return local_solution_count(self.inst, t)

    def group_of(self, v: CliqueVertex) -> RmGroup:
        return v.group

    def local_assignment(self, v: CliqueVertex) -> Dict[Point, Value]:
        return dict(zip(self.variables_of(v.group), v.payload))

    def satisfies(self, v: CliqueVertex) -> bool:
        variables = self.variables_of(v.group)
        if len(v.payload) != len(variables):
            return False
        if any(len(val) != self.inst.ell for val in v.payload):
            return False
        t = self.test_of(v.group)
        return t is None or check_test(self.local_assignment(v), t, self.inst)

    def adjacent(self, u: CliqueVertex, w: CliqueVertex) -> bool:
        gu, gw = u.group, w.group
        if gu == gw:
            return False
        if gu.underlying == gw.underlying:
            return u.payload == w.payload
        if gu.kind == VARIABLE and gw.kind == VARIABLE:
            return self._variables_linked(gu.anchor, u.payload[0], gw.anchor, w.payload[0])
        au = self.local_assignment(u)
        for x, val in zip(self.variables_of(gw), w.payload):
            if x in au and au[x] != val:
                return False
        return True

    def constraints_between(self, a: Point, b: Point) -> List[RmTest]:
        """The NB and WR tests whose two points are exactly {a, b}."""
        inst = self.inst
        p, k = inst.p, inst.k
        if a == b or a[:k] != b[:k]:
            return []
        out = []
        for src, dst in ((a, b), (b, a)):
            delta = tuple((y - x) % p for x, y in zip(src[k:], dst[k:]))
            for u in range(k):
                if delta == tuple(1 if i == u else 0 for i in range(k)):
                    out.append(make_test(inst, RmFamily.NEIGHBOR, src, u))
            if delta == (1,) * k:
                out.append(make_test(inst, RmFamily.WRAP, src))
        return out

    def _variables_linked(self, a: Point, va: Value, b: Point, vb: Value) -> bool:
        if a == b:
            return va == vb
        asg = {a: va, b: vb}
        return all(check_test(asg, t, self.inst) for t in self.constraints_between(a, b))

    def vertex_label(self, v: CliqueVertex) -> str:
        return format_vertex(v)


def build_grouped_graph(inst: RmCspInstance) -> RmCliqueGraph:
    return RmCliqueGraph(inst)


def _csv(values: Sequence[int]) -> str:
    return ",".join(str(a) for a in values)


def format_vertex(v: CliqueVertex) -> str:
    """KIND:anchor#copy=value|value..., values written as dot-separated residues."""
    payload = "|".join(".".join(str(a) for a in val) for val in v.payload)
    return f"{v.group.kind}:{_csv(v.group.anchor)}#{v.group.copy}={payload}"


def parse_vertex(text: str, graph: RmCliqueGraph) -> CliqueVertex:
    """Inverse of format_vertex; the vertex must exist in `graph`."""
    try:
        head, payload_text = text.strip().split("=", 1)
        kind_anchor, copy_text = head.split("#", 1)
        kind, anchor_text = kind_anchor.split(":", 1)
        anchor = tuple(int(a) for a in anchor_text.split(",")) if anchor_text else ()
        copy = int(copy_text)
        payload = tuple(
            tuple(int(a) for a in val.split(".")) if val else () for val in payload_text.split("|")
        )
    except ValueError:
        raise ParseError(f"malformed vertex {text!r}")
    inst = graph.inst
    widths = {"LD": 4, "LA": 3, "LB": 3, VARIABLE: 2}
    vtypes = {"LD": 1, "LA": 2, "LB": 2, VARIABLE: 3}
    if kind not in widths:
        raise ParseError(f"unknown vertex kind {kind!r}")
    if len(anchor) != widths[kind] * inst.k or any(not 0 <= a < inst.p for a in anchor):
        raise ParseError(f"anchor {anchor_text!r} does not fit k={inst.k}, p={inst.p}")
    vtype = vtypes[kind]
    if not 0 <= copy < graph.copies[vtype]:
        raise ParseError(f"copy {copy} outside [0, {graph.copies[vtype]})")
    if any(not 0 <= a < inst.p for val in payload for a in val):
        raise ParseError(f"payload {payload_text!r} has entries outside F_{inst.p}")
    v = CliqueVertex(RmGroup(vtype, kind, anchor, copy), payload)
    if not graph.satisfies(v):
        raise ParseError(f"payload of {text!r} does not satisfy its group")
    return v


class WitnessClique:
    """The clique selected by an assignment: in each group, the vertex it induces."""

    def __init__(self, graph: RmCliqueGraph, asg: Assignment) -> None:
        self.graph = graph
        self.assignment = asg

    def vertex(self, group: RmGroup) -> CliqueVertex:
        payload = tuple(self.assignment[x] for x in self.graph.variables_of(group))
        v = CliqueVertex(group, payload)
        if not self.graph.satisfies(v):
            raise CompletenessError(f"group {group} has no vertex consistent with the assignment")
        return v

    def __iter__(self) -> Iterator[CliqueVertex]:
        return (self.vertex(g) for g in self.graph.groups())

    def __len__(self) -> int:
        return self.graph.group_count


def witness_clique(inst: RmCspInstance, witness: Sequence) -> WitnessClique:
    """Clique induced by the intended assignment of a yes-witness."""
    if not inst.source.is_witness(_indices_or_check(inst, witness)):
        raise PreconditionError("witness does not sum to the target")
    return WitnessClique(RmCliqueGraph(inst), intended_assignment(inst, _vectors(inst, witness)))


def _vectors(inst: RmCspInstance, witness: Sequence) -> List:
    if witness and isinstance(witness[0], int):
        return [inst.source.groups[i][j] for i, j in enumerate(witness)]
    return list(witness)


def _indices_or_check(inst: RmCspInstance, witness: Sequence) -> Tuple[int, ...]:
    if witness and isinstance(witness[0], int):
        return tuple(witness)
    idx = []
    for i, v in enumerate(witness):
        try:
            idx.append(inst.source.groups[i].index(v))
        except ValueError:
            raise PreconditionError(f"witness vector {v} is not in group {i + 1}")
    return tuple(idx)


@dataclass
class WitnessCheck:
    groups: int
    variable_pairs: int
    sampled_pairs: int
    failures: List[Tuple[CliqueVertex, CliqueVertex]]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_witness_clique(
    clique: WitnessClique, samples: int = 100_000, seed: int = 0, all_groups: bool = True
) -> WitnessCheck:
    """
    Check pairwise adjacency of a witness clique.

    Pairs of type-3 vertices are checked exhaustively on copy 0 (adjacency between
    different variables does not depend on the copy) plus copy 0 against copy 1 of
    each variable. Pairs involving test groups are sampled uniformly by group index.
    With `all_groups` every group is also visited once so that a missing vertex
    raises CompletenessError.
    """
    graph = clique.graph
    inst = graph.inst
    failures: List[Tuple[CliqueVertex, CliqueVertex]] = []
    if all_groups:
        for _ in clique:
            pass
    layer = [clique.vertex(RmGroup(3, VARIABLE, x, 0)) for x in inst.variables()]
    pairs = 0
    for i, u in enumerate(layer):
        twin = clique.vertex(RmGroup(3, VARIABLE, u.group.anchor, 1))
        pairs += 1
        if not graph.adjacent(u, twin):
            failures.append((u, twin))
        for w in layer[i + 1 :]:
            pairs += 1
            if not graph.adjacent(u, w):
                failures.append((u, w))
    rng = np.random.default_rng(seed)
    total = graph.group_count
    for _ in range(samples):
        a = b = int(rng.integers(total))
        while b == a:
            b = int(rng.integers(total))
        u, w = clique.vertex(graph.group_at(a)), clique.vertex(graph.group_at(b))
        if not graph.adjacent(u, w):
            failures.append((u, w))
    log.info(
        f"witness clique: {pairs} variable pairs, {samples} sampled pairs, "
        f"{len(failures)} failures"
    )
    return WitnessCheck(total, pairs, samples, failures)


def type3_layer(graph: RmCliqueGraph, copy: int = 0) -> SubGraph:
    """One copy of every variable group, as a grouped graph of p^2k groups."""
    return SubGraph(graph, [RmGroup(3, VARIABLE, x, copy) for x in graph.inst.variables()])
