"""Labeled random walks on a regular graph."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import sqrt
from typing import Iterable, Iterator, Tuple

import numpy as np

from gapchain import log
from gapchain.exceptions import PreconditionError
from gapchain.expander.regular import RegularGraph
from gapchain.gapchain_globals import BUDGET_ENUM, LAMBDA_TOLERANCE, MONTECARLO_TRIALS
from gapchain.utilities import check_budget, derive_seed


@dataclass(frozen=True, order=True)
class WalkIndex:
    """A start vertex and t-1 port choices; `vertices` is the visited sequence."""

    start: int
    ports: Tuple[int, ...]
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return ".".join(str(c) for c in self.vertices) + "/" + ".".join(str(p) for p in self.ports)


def walk_from(g: RegularGraph, start: int, ports: Tuple[int, ...]) -> WalkIndex:
    path = [start]
    for p in ports:
        path.append(g.neighbor(path[-1], p))
    return WalkIndex(start, tuple(ports), tuple(path))


def walk_count(g: RegularGraph, t: int) -> int:
    return g.n * g.d ** (t - 1)


def enumerate_walks(g: RegularGraph, t: int) -> Iterator[WalkIndex]:
    """All n * d^(t-1) labeled walks of t vertices, start-major then ports lexicographic."""
    if t < 1:
        raise PreconditionError(f"walk length must be at least 1, got {t}")
    for start in range(g.n):
        for ports in product(range(g.d), repeat=t - 1):
            yield walk_from(g, start, ports)


def walk_hitting_fraction(
    g: RegularGraph,
    B: Iterable[int],
    t: int,
    budget: int = BUDGET_ENUM,
    montecarlo: bool = False,
    trials: int = MONTECARLO_TRIALS,
    seed: int = 0,
) -> Fraction:
    """
    Fraction of labeled t-vertex walks that stay inside B.

    Exact mode counts walks by dynamic programming over the rotation map and refuses
    when n * d^(t-1) exceeds the budget; `montecarlo` then samples `trials` walks
    instead.
    """
    if t < 1:
        raise PreconditionError(f"walk length must be at least 1, got {t}")
    inside = np.zeros(g.n, dtype=bool)
    for v in B:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} not in graph")
        inside[v] = True
    total = walk_count(g, t)
    if total > budget and montecarlo:
        rng = np.random.default_rng(derive_seed(seed, "walks"))
        hits = 0
        for _ in range(trials):
            v = int(rng.integers(g.n))
            ok = bool(inside[v])
            for _ in range(t - 1):
                if not ok:
                    break
                v = g.neighbor(v, int(rng.integers(g.d)))
                ok = bool(inside[v])
            hits += ok
        log.debug(f"walk hitting estimate {hits}/{trials}")
        return Fraction(hits, trials)
    check_budget("labeled walks", total, budget)
    counts = [1 if inside[v] else 0 for v in range(g.n)]
    for _ in range(t - 1):
        nxt = [0] * g.n
        for v in range(g.n):
            if counts[v]:
                for p in range(g.d):
                    w = g.neighbor(v, p)
                    if inside[w]:
                        nxt[w] += counts[v]
        counts = nxt
    return Fraction(sum(counts), total)


def walk_bound(lam: float, eps: float, t: int) -> float:
    """((1 - lam) * sqrt(eps) + lam) ** (t - 1)."""
    if not (0.0 <= eps <= 1.0 and -LAMBDA_TOLERANCE <= lam <= 1.0 + LAMBDA_TOLERANCE):
        raise PreconditionError("eps and lambda must lie in [0, 1]")
    # eigen solves land within LAMBDA_TOLERANCE of the true value
    lam = min(max(lam, 0.0), 1.0)
    return ((1.0 - lam) * sqrt(eps) + lam) ** (t - 1)


def soundness_bound(k: int, d: int, t: int, lam: float, eps: float) -> float:
    """k * d^(t-1) * ((1 - lam) * sqrt(eps) + lam)^(t-1)."""
    return k * d ** (t - 1) * walk_bound(lam, eps, t)


def tensor_soundness_bound(k: int, eps: float, t: int) -> float:
    """(eps * k)^t for the t-fold tensor product of a graph with no eps*k clique."""
    return (eps * k) ** t
