from typing import Optional, Tuple

import numpy as np

from gapchain.cnf.formula import CnfFormula
from gapchain.gapchain_globals import SAT_VAR_LIMIT
from gapchain.utilities import check_budget

CHUNK = 1 << 16


def sat_bruteforce(f: CnfFormula, limit: int = SAT_VAR_LIMIT) -> Optional[Tuple[int, ...]]:
    """
    First model in enumeration order, or None.

    Assignments are visited as the integers 0 .. 2^n - 1 with variable i + 1 on bit i,
    so x1 flips fastest. For (x1|x2|x3)&(-x1|x2|x3) the first model is (0, 1, 0).
    """
    n = f.num_vars
    check_budget("sat_bruteforce variables", n, limit)
    if any(len(clause) == 0 for clause in f.clauses):
        return None
    if not f.clauses:
        return (0,) * n
    total = 1 << n
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, total, CHUNK):
        ints = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        bits = (ints[:, None] >> shifts) & 1
        ok = np.ones(ints.size, dtype=bool)
        for clause in f.clauses:
            sat = np.zeros(ints.size, dtype=bool)
            for lit in clause:
                col = bits[:, abs(lit) - 1]
                sat |= col == 1 if lit > 0 else col == 0
            ok &= sat
        hits = np.flatnonzero(ok)
        if hits.size:
            return tuple(int(b) for b in bits[hits[0]])
    return None
