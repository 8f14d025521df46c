"""The Kovari-Sos-Turan edge bound and an exhaustive K_{a,a}-free search."""
from fractions import Fraction
from itertools import combinations
from math import comb, floor, isqrt
from typing import List, Optional, Tuple, Union

from gapchain import log
from gapchain.exceptions import PreconditionError
from gapchain.gapchain_globals import BUDGET_ENUM

Edge = Tuple[int, int]


def kst_bound(n: int, a: int) -> Union[Fraction, float]:
    """
    1/2 (a-1)^(1/a) n^(2-1/a) + 1/2 (a-1) n.

    Exact as a Fraction when a = 2 and n is a perfect square.
    """
    if a < 2:
        raise PreconditionError(f"a must be at least 2, got {a}")
    if n < 0:
        raise PreconditionError(f"n must be non-negative, got {n}")
    if a == 2 and isqrt(n) ** 2 == n:
        return Fraction(n * isqrt(n), 2) + Fraction(n, 2)
    return 0.5 * (a - 1) ** (1 / a) * n ** (2 - 1 / a) + 0.5 * (a - 1) * n


class _SearchBudget(Exception):
    pass


class _KaaSearch:
    """
    Edges are decided in lexicographic order, include before exclude.

    An included edge uv closes a K_{a,a} exactly when some a-set containing u inside
    N(v), or containing v inside N(u), has at least a common neighbours. Pruning uses
    the fact that an a-set has at most a-1 common neighbours, so the degrees satisfy
    sum C(deg, a) <= (a-1) C(n, a); the largest degree total reachable under that cap
    bounds the edges of any completion.
    """

    def __init__(self, n: int, a: int, goal: int, budget: int) -> None:
        self.n = n
        self.a = a
        self.goal = goal
        self.budget = budget
        self.order: List[Edge] = list(combinations(range(n), 2))
        self.adj = [0] * n
        self.deg = [0] * n
        self.cap = (a - 1) * comb(n, a)
        # remaining[pos][v]: edges at index >= pos touching v
        self.remaining = [[0] * n for _ in range(len(self.order) + 1)]
        for pos in range(len(self.order) - 1, -1, -1):
            row = list(self.remaining[pos + 1])
            u, v = self.order[pos]
            row[u] += 1
            row[v] += 1
            self.remaining[pos] = row
        self.best = -1
        self.best_edges: List[Edge] = []
        self.nodes = 0

    def closes_kaa(self, u: int, v: int) -> bool:
        for x, y in ((u, v), (v, u)):
            others = [w for w in range(self.n) if self.adj[y] >> w & 1 and w != x]
            for rest in combinations(others, self.a - 1):
                common = self.adj[x]
                for w in rest:
                    common &= self.adj[w]
                if bin(common).count("1") >= self.a:
                    return True
        return False

    def reachable(self, pos: int, edges: int) -> int:
        degs = list(self.deg)
        room = self.remaining[pos]
        spent = sum(comb(d, self.a) for d in degs)
        extra = 0
        while True:
            best_v = -1
            for v in range(self.n):
                if room[v] > 0 and degs[v] - self.deg[v] < room[v]:
                    if best_v < 0 or degs[v] < degs[best_v]:
                        best_v = v
            if best_v < 0:
                break
            cost = comb(degs[best_v], self.a - 1)
            if spent + cost > self.cap:
                break
            spent += cost
            degs[best_v] += 1
            extra += 1
        return edges + extra // 2

    def run(self, chosen: List[Edge], pos: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _SearchBudget()
        if len(chosen) > self.best:
            self.best, self.best_edges = len(chosen), list(chosen)
            if self.best >= self.goal:
                return True
        if pos == len(self.order):
            return False
        if self.reachable(pos, len(chosen)) <= self.best:
            return False
        u, v = self.order[pos]
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.deg[u] += 1
        self.deg[v] += 1
        if not self.closes_kaa(u, v):
            chosen.append((u, v))
            if self.run(chosen, pos + 1):
                return True
            chosen.pop()
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)
        self.deg[u] -= 1
        self.deg[v] -= 1
        return self.run(chosen, pos + 1)


def max_kaa_free_edges(n: int, a: int = 2, budget: int = BUDGET_ENUM) -> Tuple[int, List[Edge]]:
    """Largest edge count of a K_{a,a}-free graph on n vertices, with a witness."""
    if a < 2:
        raise PreconditionError(f"a must be at least 2, got {a}")
    search = _KaaSearch(n, a, comb(n, 2) + 1, budget)
    try:
        search.run([], 0)
    except _SearchBudget:
        raise PreconditionError(f"search for n={n}, a={a} exceeded {budget} nodes")
    log.debug(f"K_{a},{a}-free maximum on {n} vertices: {search.best} ({search.nodes} nodes)")
    return search.best, search.best_edges


def kaa_free_edge_search(
    n: int, a: int = 2, min_edges: Optional[int] = None, budget: int = BUDGET_ENUM
) -> Optional[List[Edge]]:
    """
    A K_{a,a}-free graph on n vertices with at least `min_edges` edges, or None.

    The default goal is one edge above kst_bound(n, a), so None means no graph beats
    the bound.
    """
    if min_edges is None:
        min_edges = floor(kst_bound(n, a)) + 1
    best, edges = max_kaa_free_edges(n, a, budget)
    return edges if best >= min_edges else None
