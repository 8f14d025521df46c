"""Exact ground truth for the CSP graph: full cliques are passing bilinear assignments."""
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple

import numpy as np

from gapchain import log
from gapchain.gapchain_globals import BUDGET_ENUM, BUDGET_ORACLE
from gapchain.oracles import max_grouped_clique
from gapchain.rmcsp.checks import Assignment, failing_tests
from gapchain.rmcsp.graph import RmCliqueGraph, type3_layer
from gapchain.rmcsp.instance import RmCspInstance
from gapchain.utilities import check_budget


def _column_candidates(inst: RmCspInstance, u: int) -> List["np.ndarray"]:
    """
    Matrices c in F^(l x k) with c @ alpha in {f(alpha, v) : v in V_u} for every alpha.

    Column j of c must be f(e_j, v) for some v in V_u, which bounds the search by
    |V_u|^k before the full check over alpha.
    """
    k = inst.k
    unit = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    choices = [sorted(inst.neighbor_values(u, e)) for e in unit]
    alphas = list(inst.alphas())
    out = []
    for cols in product(*choices):
        c = np.array(cols, dtype=np.int64).T.reshape(inst.ell, k)
        if all(
            tuple(int(a) for a in c @ np.asarray(alpha, dtype=np.int64) % inst.p)
            in inst.neighbor_values(u, alpha)
            for alpha in alphas
        ):
            out.append(c)
    return out


def find_passing_assignment(
    inst: RmCspInstance, budget: int = BUDGET_ENUM
) -> Optional[Assignment]:
    """
    A bilinear assignment passing every test, or None when none exists.

    Any full clique of the graph induces an assignment passing all tests, and a
    passing assignment is bilinear, so the search runs over coefficient tensors C of
    shape (l, k, k): column u of C must meet the NB(u) tests and the columns must sum
    to the WR right-hand side (A_w t)_j.
    """
    k, p = inst.k, inst.p
    per_column = max((len(g) for g in inst.source.groups), default=0) ** k
    check_budget("bilinear column candidates", per_column, budget)
    cands = [_column_candidates(inst, u) for u in range(k)]
    if any(not c for c in cands):
        return None
    rhs = inst._a @ np.asarray(inst.source.target.entries, dtype=np.int64) % p
    combos = 1
    for c in cands[:-1]:
        combos *= len(c)
    check_budget("bilinear column combinations", combos, budget)
    last = {tuple(c.ravel()): c for c in cands[-1]}
    for head in product(*cands[:-1]):
        partial = sum(head, np.zeros((inst.ell, k), dtype=np.int64))
        need = (rhs - partial) % p
        tail = last.get(tuple(need.ravel()))
        if tail is not None:
            coeffs = np.stack(list(head) + [tail], axis=2)
            return Assignment.bilinear(inst, coeffs)
    return None


@dataclass
class SoundnessProbe:
    """
    Evidence that a CSP graph has no full clique.

    layer_best is the certified maximum clique of the type-3 layer (one copy of every
    variable). `assignment` reads the best layer selection as an assignment, zero on
    the variables it leaves out, and failing lists the test families it violates.
    """

    full_clique: bool
    layer_groups: int
    layer_best: int
    lower_bound_only: bool
    failing: Tuple[str, ...]
    assignment: Optional[Assignment] = None


def probe_soundness(
    inst: RmCspInstance, budget: int = BUDGET_ORACLE, enum_budget: int = BUDGET_ENUM
) -> SoundnessProbe:
    graph = RmCliqueGraph(inst)
    layer = type3_layer(graph)
    witness = max_grouped_clique(layer, budget=budget)
    asg = Assignment.zero(inst)
    for v in witness.vertices:
        asg.table[asg.index(v.group.anchor)] = v.payload[0]
    failing = tuple(f.value for f in failing_tests(asg, inst, budget=enum_budget))
    full = find_passing_assignment(inst, enum_budget) is not None
    log.info(
        f"soundness probe: layer {witness.size}/{layer.group_count}, full clique {full}, "
        f"failing {failing}"
    )
    return SoundnessProbe(
        full, layer.group_count, witness.size, witness.lower_bound_only, failing, asg
    )
