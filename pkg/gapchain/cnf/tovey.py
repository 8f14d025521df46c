from dataclasses import replace
from typing import Dict, List, Tuple

from gapchain import log
from gapchain.cnf.formula import MAX_OCCURRENCES, Clause, CnfFormula


def tovey_normalize(f: CnfFormula) -> CnfFormula:
    """
    Rewrite f so every variable occurs in at most three clauses.

    A variable x with c > 3 occurrences is replaced by fresh copies x^1..x^c, one per
    occurrence in clause order, and the implication cycle (not x^i or x^(i+1 mod c)) is
    appended. Copies are numbered after the original variables, so num_vars <= 3m + n.
    """
    occ = f.occurrences()
    heavy = sorted(x for x, c in occ.items() if c > MAX_OCCURRENCES)
    if not heavy:
        return replace(f, normalized=True)

    next_var = f.num_vars + 1
    copies: Dict[int, List[int]] = {}
    for x in heavy:
        copies[x] = list(range(next_var, next_var + occ[x]))
        next_var += occ[x]

    used = {x: 0 for x in heavy}
    clauses: List[Clause] = []
    for clause in f.clauses:
        new_clause = []
        for lit in clause:
            x = abs(lit)
            if x in copies:
                fresh = copies[x][used[x]]
                used[x] += 1
                lit = fresh if lit > 0 else -fresh
            new_clause.append(lit)
        clauses.append(tuple(new_clause))

    cycle: List[Tuple[int, ...]] = []
    for x in heavy:
        xs = copies[x]
        for i, xi in enumerate(xs):
            cycle.append((-xi, xs[(i + 1) % len(xs)]))
    log.debug(f"tovey: {len(heavy)} heavy variables, {len(cycle)} implication clauses")
    return CnfFormula(next_var - 1, tuple(clauses) + tuple(cycle), normalized=True)
