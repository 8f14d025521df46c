"""d-regular multigraphs given by a rotation map."""
from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

import numpy as np

from gapchain import log
from gapchain.exceptions import DimensionMismatch, ParseError, PreconditionError
from gapchain.utilities import derive_seed

Port = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class RegularGraph:
    """
    rotation[v * d + p] = (w, q) means port p of v leads to w and arrives on port q.

    The rotation map is an involution; parallel edges and self-loops are allowed.
    """

    n: int
    d: int
    rotation: Tuple[Port, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 0:
            raise PreconditionError(f"bad graph size n={self.n}, d={self.d}")
        if len(self.rotation) != self.n * self.d:
            raise DimensionMismatch(
                f"rotation map has {len(self.rotation)} entries, expected {self.n * self.d}"
            )
        for idx, (w, q) in enumerate(self.rotation):
            if not (0 <= w < self.n and 0 <= q < self.d):
                raise PreconditionError(f"rotation entry {idx} points outside the graph")
            if self.rotation[w * self.d + q] != divmod(idx, self.d):
                at = divmod(idx, self.d)
                raise PreconditionError(f"rotation map is not an involution at {at}")

    def rotate(self, v: int, port: int) -> Port:
        return self.rotation[v * self.d + port]

    def neighbor(self, v: int, port: int) -> int:
        return self.rotation[v * self.d + port][0]

    def adjacency_matrix(self) -> "np.ndarray":
        """Integer matrix A[v, w] = number of ports of v leading to w."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for idx, (w, _) in enumerate(self.rotation):
            a[idx // self.d, w] += 1
        return a

    @cached_property
    def lam(self) -> float:
        from gapchain.expander.spectral import spectral_lambda

        return spectral_lambda(self).value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RegularGraph):
            return NotImplemented
        return (self.n, self.d, self.rotation) == (other.n, other.d, other.rotation)

    def __hash__(self) -> int:
        return hash((self.n, self.d, self.rotation))


def complete_graph(n: int) -> RegularGraph:
    """K_n; port i of v leads to the i-th vertex other than v."""
    if n < 2:
        raise PreconditionError("complete graph needs at least 2 vertices")
    rotation: List[Port] = []
    for v in range(n):
        for w in range(n):
            if w != v:
                rotation.append((w, v if v < w else v - 1))
    return RegularGraph(n, n - 1, tuple(rotation))


def cycle_graph(n: int) -> RegularGraph:
    """C_n with port 0 forward and port 1 backward."""
    if n < 1:
        raise PreconditionError("cycle needs at least 1 vertex")
    rotation: List[Port] = []
    for v in range(n):
        rotation.append(((v + 1) % n, 1))
        rotation.append(((v - 1) % n, 0))
    return RegularGraph(n, 2, tuple(rotation))


def disjoint_union(g: RegularGraph, h: RegularGraph) -> RegularGraph:
    if g.d != h.d:
        raise DimensionMismatch(f"degrees differ: {g.d} and {h.d}")
    shifted = tuple((w + g.n, q) for w, q in h.rotation)
    return RegularGraph(g.n + h.n, g.d, g.rotation + shifted)


def random_regular(n: int, d: int, seed: int = 0) -> RegularGraph:
    """Configuration model: a seeded random perfect matching of the n*d port stubs."""
    if (n * d) % 2:
        raise PreconditionError(f"n*d must be even, got n={n}, d={d}")
    if n <= d:
        raise PreconditionError(f"need n > d, got n={n}, d={d}")
    rng = np.random.default_rng(derive_seed(seed, "expander"))
    stubs = rng.permutation(n * d)
    rotation: List[Port] = [(0, 0)] * (n * d)
    for a, b in zip(stubs[0::2], stubs[1::2]):
        rotation[int(a)] = divmod(int(b), d)
        rotation[int(b)] = divmod(int(a), d)
    g = RegularGraph(n, d, tuple(rotation))
    log.debug(f"random {d}-regular graph on {n} vertices, seed {seed}")
    return g


def format_regular(g: RegularGraph) -> str:
    lines = [f"{g.n} {g.d}"]
    for idx, (w, q) in enumerate(g.rotation):
        v, p = divmod(idx, g.d)
        lines.append(f"{v} {p} {w} {q}")
    return "\n".join(lines) + "\n"


def parse_regular(text: str) -> RegularGraph:
    lines = [line for line in text.rstrip("\n").splitlines()]
    try:
        n, d = (int(a) for a in lines[0].split())
    except (ValueError, IndexError):
        raise ParseError("expected 'n d' header", 1)
    if len(lines) != 1 + n * d:
        raise ParseError(f"expected {n * d} rotation lines, found {len(lines) - 1}", len(lines))
    rotation: List[Port] = [(0, 0)] * (n * d)
    seen = set()
    for pos, line in enumerate(lines[1:], start=2):
        try:
            v, p, w, q = (int(a) for a in line.split())
        except ValueError:
            raise ParseError(f"malformed rotation line {line!r}", pos)
        if not (0 <= v < n and 0 <= p < d) or (v, p) in seen:
            raise ParseError(f"bad or repeated port ({v}, {p})", pos)
        seen.add((v, p))
        rotation[v * d + p] = (w, q)
    try:
        return RegularGraph(n, d, tuple(rotation))
    except PreconditionError as e:
        raise ParseError(str(e))
