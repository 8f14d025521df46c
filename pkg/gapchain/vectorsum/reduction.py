"""Reduction from normalized 3-CNF to k-VectorSum."""
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gapchain import log
from gapchain.cnf import CnfFormula
from gapchain.cnf.formula import MAX_OCCURRENCES
from gapchain.exceptions import PreconditionError, VerificationFailed
from gapchain.ff import FieldVec, PrimeField
from gapchain.gapchain_globals import PART_VAR_LIMIT
from gapchain.utilities import check_budget
from gapchain.vectorsum.instance import PartitionLayout, VectorSumInstance

# Coordinates of a Y variable set to true, by rank of the part among its three parts.
Y_PATTERNS = ((1, 1), (-1, 0), (0, -1))


def partition_clauses(f: CnfFormula, k: int) -> PartitionLayout:
    """Split the clauses into k contiguous blocks of size ceil(m/k) or floor(m/k)."""
    m = f.num_clauses
    if k < 1 or k > m:
        raise PreconditionError(f"cannot split {m} clauses into k = {k} parts")
    if f.max_occurrence() > MAX_OCCURRENCES:
        raise PreconditionError("formula must be normalized (each variable in <= 3 clauses)")
    q, r = divmod(m, k)
    parts = []
    start = 0
    for i in range(k):
        stop = start + q + (1 if i < r else 0)
        parts.append((start, stop))
        start = stop

    seen: Dict[int, set] = {}
    for i, (lo, hi) in enumerate(parts):
        for clause in f.clauses[lo:hi]:
            for lit in clause:
                seen.setdefault(abs(lit), set()).add(i)
    var_parts = {x: tuple(sorted(ps)) for x, ps in sorted(seen.items())}

    X = tuple(x for x, ps in var_parts.items() if len(ps) == 2)
    Y = tuple(x for x, ps in var_parts.items() if len(ps) == 3)
    entry_map: Dict[int, Tuple[int, ...]] = {}
    coord = 0
    for x, ps in var_parts.items():
        if len(ps) == 2:
            entry_map[x] = (coord,)
            coord += 1
        elif len(ps) == 3:
            entry_map[x] = (coord, coord + 1)
            coord += 2
    return PartitionLayout(k, tuple(parts), var_parts, X, Y, entry_map)


def part_variables(f: CnfFormula, layout: PartitionLayout, i: int) -> Tuple[int, ...]:
    lo, hi = layout.parts[i]
    return tuple(sorted({abs(lit) for clause in f.clauses[lo:hi] for lit in clause}))


def part_vector(
    layout: PartitionLayout, i: int, value_of: Callable[[int], int], p: int
) -> Tuple[int, ...]:
    """Vector of part i for an assignment; -1 is stored as p - 1."""
    vec = [0] * layout.d
    for x, coords in layout.entry_map.items():
        parts = layout.var_parts[x]
        if i not in parts or value_of(x) != 1:
            continue
        rank = parts.index(i)
        if len(coords) == 1:
            vec[coords[0]] = 1 if rank == 0 else p - 1
        else:
            for c, val in zip(coords, Y_PATTERNS[rank]):
                vec[c] = val % p
    return tuple(vec)


def encode_part(
    f: CnfFormula,
    layout: PartitionLayout,
    i: int,
    field: PrimeField = PrimeField(),
    limit: int = PART_VAR_LIMIT,
) -> List[FieldVec]:
    """
    All distinct vectors of part i, one per part-satisfying assignment of its variables.
    An unsatisfiable part gives an empty list.
    """
    lo, hi = layout.parts[i]
    clauses = f.clauses[lo:hi]
    z = part_variables(f, layout, i)
    check_budget(f"variables of part {i + 1}", len(z), limit)
    pos = {x: j for j, x in enumerate(z)}
    seen: Dict[Tuple[int, ...], None] = {}
    for tau in product((0, 1), repeat=len(z)):
        if all(any((tau[pos[abs(lit)]] == 1) == (lit > 0) for lit in c) for c in clauses):
            vec = part_vector(layout, i, lambda x: tau[pos[x]], field.p)
            seen.setdefault(vec, None)
    if not seen:
        log.info(f"part {i + 1} is unsatisfiable, its group is empty")
    return [FieldVec(field, vec) for vec in seen]


def reduce_sat_to_vectorsum(
    f: CnfFormula,
    k: int,
    field: PrimeField = PrimeField(),
    limit: int = PART_VAR_LIMIT,
    workers: int = 1,
) -> VectorSumInstance:
    """Build the k-VectorSum instance (target zero) whose yes-witnesses are models of f."""
    layout = partition_clauses(f, k)
    encode = partial(encode_part, f, layout, field=field, limit=limit)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            groups = list(pool.map(encode, range(k)))
    else:
        groups = [encode(i) for i in range(k)]
    log.debug(f"sat2vs: d = {layout.d}, group sizes {[len(g) for g in groups]}")
    return VectorSumInstance(
        field,
        layout.d,
        tuple(tuple(g) for g in groups),
        FieldVec.zero(field, layout.d),
        layout=layout,
    )


def assignment_to_witness(inst: VectorSumInstance, tau: Sequence[int]) -> Tuple[int, ...]:
    """Map a satisfying assignment to the zero-sum witness it induces."""
    layout = _require_layout(inst)
    witness = []
    for i, group in enumerate(inst.groups):
        vec = FieldVec(inst.field, part_vector(layout, i, lambda x: tau[x - 1], inst.field.p))
        try:
            witness.append(group.index(vec))
        except ValueError:
            raise VerificationFailed(f"assignment does not satisfy part {i + 1}")
    return tuple(witness)


def witness_to_assignment(
    f: CnfFormula, inst: VectorSumInstance, witness: Sequence[int]
) -> Tuple[int, ...]:
    """
    Recover a model of f from a zero-sum witness: shared variables are read off the
    chosen vectors and each part's local variables are completed by search.
    """
    layout = _require_layout(inst)
    values: Dict[int, int] = {}
    for x, coords in layout.entry_map.items():
        j1 = layout.var_parts[x][0]
        vec = inst.groups[j1][witness[j1]]
        values[x] = 1 if vec[coords[0]] != 0 else 0
    for i in range(layout.k):
        lo, hi = layout.parts[i]
        clauses = f.clauses[lo:hi]
        free = [x for x in part_variables(f, layout, i) if x not in values]
        completion = _complete_part(clauses, values, free)
        if completion is None:
            raise VerificationFailed(f"witness cannot be completed on part {i + 1}")
        values.update(completion)
    tau = tuple(values.get(x, 0) for x in range(1, f.num_vars + 1))
    if not f.evaluate(tau):
        raise VerificationFailed("recovered assignment does not satisfy the formula")
    return tau


def _complete_part(
    clauses: Sequence[Tuple[int, ...]], fixed: Dict[int, int], free: Sequence[int]
) -> Optional[Dict[int, int]]:
    for bits in product((0, 1), repeat=len(free)):
        trial = dict(fixed)
        trial.update(zip(free, bits))
        if all(any((trial[abs(lit)] == 1) == (lit > 0) for lit in c) for c in clauses):
            return dict(zip(free, bits))
    return None


def _require_layout(inst: VectorSumInstance) -> PartitionLayout:
    if inst.layout is None:
        raise PreconditionError("instance carries no partition layout")
    return inst.layout
