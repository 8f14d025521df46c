"""Gadget property checks and the brute-force VectorSum solver."""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from gapchain import log
from gapchain.gapchain_globals import BUDGET_ENUM
from gapchain.utilities import check_budget
from gapchain.vectorsum.instance import VectorSumInstance

Vec = Tuple[int, ...]


@dataclass
class GadgetReport:
    """P3: no vector is a nonzero multiple of another. P4: u - w != a(w - v)."""

    p3: bool = True
    p4: bool = True
    witnesses: List[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.p3 and self.p4


def _scale(v: Vec, a: int, p: int) -> Vec:
    return tuple(a * x % p for x in v)


def _p3_witness(group: List[Vec], p: int) -> Optional[Tuple]:
    index = {v: i for i, v in enumerate(group)}
    for j, v in enumerate(group):
        for a in range(1, p):
            i = index.get(_scale(v, a, p))
            if i is not None and i != j:
                return ("P3", i, j, a)
    return None


def _p4_witness(group: List[Vec], p: int) -> Optional[Tuple]:
    # u - w = a(w - v)  <=>  u + a v = (1 + a) w
    n = len(group)
    for a in range(1, p):
        rhs: Dict[Vec, List[int]] = {}
        for w, vec in enumerate(group):
            rhs.setdefault(_scale(vec, 1 + a, p), []).append(w)
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                key = tuple((x + a * y) % p for x, y in zip(group[u], group[v]))
                for w in rhs.get(key, ()):
                    if w != u and w != v:
                        return ("P4", u, v, w, a)
    return None


def check_gadget_properties(inst: VectorSumInstance) -> GadgetReport:
    """Exhaustive P3/P4 check; the first counterexample per property is recorded."""
    p = inst.field.p
    report = GadgetReport()
    for gi, group in enumerate(inst.groups):
        vecs = [v.entries for v in group]
        if report.p3:
            wit = _p3_witness(vecs, p)
            if wit is not None:
                report.p3 = False
                report.witnesses.append((wit[0], gi) + wit[1:])
        if report.p4:
            wit = _p4_witness(vecs, p)
            if wit is not None:
                report.p4 = False
                report.witnesses.append((wit[0], gi) + wit[1:])
    return report


def solve_vectorsum_bruteforce(
    inst: VectorSumInstance, budget: int = BUDGET_ENUM
) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically first witness (one index per group) summing to the target.

    Prefixes over the first k - 1 groups are enumerated in order; the last group is
    resolved through a lookup of its first vector equal to the missing remainder.
    """
    if inst.empty_groups:
        return None
    total = 1
    for g in inst.groups:
        total *= len(g)
    check_budget("vectorsum search space", total, budget)
    if inst.k == 0:
        return () if inst.target.is_zero() else None
    p = inst.field.p
    target = inst.target.entries
    last: Dict[Vec, int] = {}
    for j, v in enumerate(inst.groups[-1]):
        last.setdefault(v.entries, j)
    head = [[v.entries for v in g] for g in inst.groups[:-1]]
    zero = (0,) * inst.d
    for prefix in product(*(range(len(g)) for g in head)):
        acc = zero
        for g, idx in zip(head, prefix):
            acc = tuple((x + y) % p for x, y in zip(acc, g[idx]))
        need = tuple((t - x) % p for t, x in zip(target, acc))
        j = last.get(need)
        if j is not None:
            log.debug(f"vectorsum witness found: {prefix + (j,)}")
            return prefix + (j,)
    return None
