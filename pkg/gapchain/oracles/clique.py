"""Exact maximum grouped clique by branch and bound."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from operator import mul
from typing import List, Optional, Tuple

from gapchain import log
from gapchain.exceptions import ParseError, VerificationFailed
from gapchain.gapchain_globals import BUDGET_ENUM, BUDGET_MATERIALIZE, BUDGET_ORACLE
from gapchain.graphs import Group, GroupedGraph, Vertex
from gapchain.oracles.bitgraph import BitGraph, bit_graph, components
from gapchain.utilities import check_budget


@dataclass
class CliqueWitness:
    """Selected vertices, one per covered group, in group order."""

    vertices: Tuple[Vertex, ...]
    groups: Tuple[Group, ...]
    lower_bound_only: bool = False
    nodes: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)


class _NodeBudget(Exception):
    pass


@dataclass
class _Search:
    bg: BitGraph
    order: List[int]
    budget: int
    best: Tuple[int, ...] = ()
    nodes: int = 0
    exhausted: bool = False

    def run(self) -> None:
        full = sum(self.bg.group_mask[g] for g in self.order)
        try:
            self._branch(0, full, ())
        except _NodeBudget:
            self.exhausted = True

    def _branch(self, pos: int, cand: int, chosen: Tuple[int, ...]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _NodeBudget()
        if len(chosen) > len(self.best):
            self.best = chosen
        if len(self.best) == len(self.order):
            return
        reachable = sum(1 for g in self.order[pos:] if cand & self.bg.group_mask[g])
        if len(chosen) + reachable <= len(self.best):
            return
        if pos == len(self.order):
            return
        g = self.order[pos]
        options = cand & self.bg.group_mask[g]
        for v in self.bg.members[g]:
            if options >> v & 1:
                self._branch(pos + 1, cand & self.bg.adj[v], chosen + (v,))
                if len(self.best) == len(self.order):
                    return
        self._branch(pos + 1, cand & ~self.bg.group_mask[g], chosen)


def _solve_component(args: Tuple[BitGraph, List[int], int]) -> Tuple[Tuple[int, ...], int, bool]:
    bg, order, budget = args
    search = _Search(bg, order, budget)
    search.run()
    return search.best, search.nodes, search.exhausted


def max_grouped_clique(
    graph: GroupedGraph,
    budget: int = BUDGET_ORACLE,
    decompose: bool = True,
    workers: int = 1,
    materialize_budget: int = BUDGET_MATERIALIZE,
) -> CliqueWitness:
    """
    Maximum set of pairwise adjacent vertices with at most one per group.

    Groups are branched in ascending order and vertices in canonical order, with the
    skip branch last, so the witness is the first maximum found in that order. `budget`
    caps search nodes per component; when it runs out the best selection so far is
    returned with lower_bound_only set.
    """
    bg = bit_graph(graph, budget=materialize_budget)
    comps = components(bg) if decompose else [list(range(len(bg.groups)))]
    jobs = [(bg, comp, budget) for comp in comps]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_component, jobs))
    else:
        results = [_solve_component(job) for job in jobs]
    chosen = sorted(v for best, _, _ in results for v in best)
    nodes = sum(n for _, n, _ in results)
    flagged = any(e for _, _, e in results)
    witness = CliqueWitness(
        tuple(bg.vertices[v] for v in chosen),
        tuple(bg.groups[bg.group_index[v]] for v in chosen),
        lower_bound_only=flagged,
        nodes=nodes,
    )
    if not graph.is_clique(witness.vertices):
        raise VerificationFailed("oracle returned a selection that is not a clique", witness)
    log.info(
        f"max grouped clique: {witness.size}/{len(bg.groups)} groups, {len(comps)} components, "
        f"{nodes} nodes{' (lower bound only)' if flagged else ''}"
    )
    return witness


def naive_max_grouped_clique(graph: GroupedGraph, budget: int = BUDGET_ENUM) -> CliqueWitness:
    """Enumerate every partial selection; reference answer for small graphs."""
    groups = list(graph.groups())
    options: List[List[Optional[Vertex]]] = [list(graph.vertices(g)) + [None] for g in groups]
    check_budget("naive clique selections", reduce(mul, (len(o) for o in options), 1), budget)
    best: Tuple[Vertex, ...] = ()
    best_groups: Tuple[Group, ...] = ()
    for combo in product(*options):
        picked = [(g, v) for g, v in zip(groups, combo) if v is not None]
        if len(picked) <= len(best):
            continue
        if all(graph.adjacent(u, w) for (_, u), (_, w) in combinations(picked, 2)):
            best = tuple(v for _, v in picked)
            best_groups = tuple(g for g, _ in picked)
    return CliqueWitness(best, best_groups)


def format_witness(graph: GroupedGraph, witness: CliqueWitness, problem: str = "clique") -> str:
    """Witness report: header line, then `group_position label` per selected vertex."""
    position = {g: i for i, g in enumerate(graph.groups())}
    flag = " lower-bound-only" if witness.lower_bound_only else ""
    lines = [f"witness {problem} {witness.size}{flag}"]
    for g, v in zip(witness.groups, witness.vertices):
        lines.append(f"{position[g] + 1} {graph.vertex_label(v)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_witness(text: str) -> Tuple[str, int, bool, List[Tuple[int, str]]]:
    """Inverse of format_witness: (problem, size, lower_bound_only, [(group position, label)])."""
    lines = text.rstrip("\n").splitlines()
    head = lines[0].split() if lines else []
    if len(head) not in (3, 4) or head[0] != "witness":
        raise ParseError("expected 'witness <problem> <size>' header", 1)
    if len(head) == 4 and head[3] != "lower-bound-only":
        raise ParseError(f"unknown witness flag {head[3]!r}", 1)
    try:
        size = int(head[2])
        rows = [(int(line.split()[0]), line.split()[1]) for line in lines[1 : 1 + size]]
    except (ValueError, IndexError):
        raise ParseError("malformed witness entry")
    if len(lines) != size + 2 or lines[-1].strip() != "end":
        raise ParseError("witness is truncated or has trailing data", len(lines))
    return head[1], size, len(head) == 4, rows
