"""The four CSP test families and assignments over the variable space F^2k."""
from enum import Enum
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from gapchain.exceptions import DimensionMismatch, PreconditionError
from gapchain.ff import FieldVec
from gapchain.gapchain_globals import BUDGET_ENUM
from gapchain.ldt import ldt_coefficients
from gapchain.rmcsp.instance import Point, RmCspInstance, Value
from gapchain.utilities import check_budget

LOW_DEGREE_ARITY = 4


class RmFamily(str, Enum):
    LOW_DEGREE = "LD"
    LINEARITY_ALPHA = "LA"
    LINEARITY_BETA = "LB"
    NEIGHBOR = "NB"
    WRAP = "WR"


ARITY = {
    RmFamily.LOW_DEGREE: 4,
    RmFamily.LINEARITY_ALPHA: 3,
    RmFamily.LINEARITY_BETA: 3,
    RmFamily.NEIGHBOR: 2,
    RmFamily.WRAP: 2,
}


def _add(a: Sequence[int], b: Sequence[int], p: int, scale: int = 1) -> Point:
    return tuple((x + scale * y) % p for x, y in zip(a, b))


@dataclass(frozen=True)
class RmTest:
    """
    One test: a family, its anchor and the queried points in query order.

    Anchors are (alpha, beta, t1, t2) for LD, (alpha, alpha', beta) for LA,
    (alpha, beta, beta') for LB and (alpha, beta) for NB and WR. `u` is the group
    index of an NB test.
    """

    family: RmFamily
    anchor: Tuple[int, ...]
    points: Tuple[Point, ...]
    u: Optional[int] = None

    @property
    def arity(self) -> int:
        return len(self.points)

    @property
    def variables(self) -> Tuple[Point, ...]:
        return tuple(sorted(set(self.points)))


def make_test(
    inst: RmCspInstance, family: RmFamily, anchor: Tuple[int, ...], u: Optional[int] = None
) -> RmTest:
    p, k = inst.p, inst.k
    if len(anchor) != ARITY[family] * k:
        raise DimensionMismatch(f"{family.value} anchor has length {len(anchor)}")
    parts = [anchor[i * k : (i + 1) * k] for i in range(len(anchor) // k)] if k else []
    if family is RmFamily.LOW_DEGREE:
        x, h = anchor[: 2 * k], anchor[2 * k :]
        points = tuple(_add(x, h, p, i) for i in range(LOW_DEGREE_ARITY))
    elif family is RmFamily.LINEARITY_ALPHA:
        a, a2, b = parts
        points = (a + b, a2 + b, _add(a, a2, p) + b)
    elif family is RmFamily.LINEARITY_BETA:
        a, b, b2 = parts
        points = (a + b, a + b2, a + _add(b, b2, p))
    elif family is RmFamily.NEIGHBOR:
        if u is None or not 0 <= u < k:
            raise PreconditionError(f"neighbor test needs a group index in [0, {k}), got {u}")
        a, b = parts
        e_u = tuple(1 if i == u else 0 for i in range(k))
        points = (a + b, a + _add(b, e_u, p))
    else:
        a, b = parts
        points = (a + b, a + _add(b, (1,) * k, p))
    return RmTest(family, tuple(anchor), points, u if family is RmFamily.NEIGHBOR else None)


def family_size(inst: RmCspInstance, family: RmFamily) -> int:
    p, k = inst.p, inst.k
    if family is RmFamily.LOW_DEGREE:
        return p ** (4 * k)
    if family in (RmFamily.LINEARITY_ALPHA, RmFamily.LINEARITY_BETA):
        return p ** (3 * k)
    if family is RmFamily.NEIGHBOR:
        return k * p ** (2 * k)
    return p ** (2 * k)


def enumerate_tests(inst: RmCspInstance, family: RmFamily) -> Iterator[RmTest]:
    """Lazy stream of every test of one family, anchors in lexicographic order."""
    width = ARITY[family] * inst.k
    if family is RmFamily.NEIGHBOR:
        for u in range(inst.k):
            for anchor in product(range(inst.p), repeat=width):
                yield make_test(inst, family, anchor, u)
        return
    for anchor in product(range(inst.p), repeat=width):
        yield make_test(inst, family, anchor)


class Assignment(Mapping[Point, Value]):
    """A total map F^2k -> F^l backed by a dense table."""

    def __init__(self, inst: RmCspInstance, table: "np.ndarray") -> None:
        if table.shape != (inst.p ** (2 * inst.k), inst.ell):
            raise DimensionMismatch(f"assignment table has shape {table.shape}")
        self.inst = inst
        self.table = table % inst.p
        self._weights = inst.p ** np.arange(2 * inst.k - 1, -1, -1, dtype=np.int64)

    def index(self, x: Point) -> int:
        return int(np.dot(np.asarray(x, dtype=np.int64), self._weights))

    def __getitem__(self, x: Point) -> Value:
        if len(x) != 2 * self.inst.k:
            raise KeyError(x)
        return tuple(int(a) for a in self.table[self.index(x)])

    def __iter__(self) -> Iterator[Point]:
        return self.inst.variables()

    def __len__(self) -> int:
        return self.table.shape[0]

    @classmethod
    def zero(cls, inst: RmCspInstance) -> "Assignment":
        return cls(inst, np.zeros((inst.p ** (2 * inst.k), inst.ell), dtype=np.int64))

    @classmethod
    def bilinear(cls, inst: RmCspInstance, coeffs: "np.ndarray") -> "Assignment":
        """x(alpha, beta)_w = sum_j,i alpha_j beta_i C[w, j, i] for C of shape (l, k, k)."""
        k = inst.k
        pts = np.array(list(inst.variables()), dtype=np.int64).reshape(-1, 2 * k)
        alpha, beta = pts[:, :k], pts[:, k:]
        table = np.einsum("nj,wji,ni->nw", alpha, np.asarray(coeffs, dtype=np.int64), beta)
        return cls(inst, table % inst.p)


def intended_assignment(inst: RmCspInstance, witness: Sequence[FieldVec]) -> Assignment:
    """x(alpha, beta) = f(alpha, sum_i beta_i v_i) for one chosen vector v_i per group."""
    if len(witness) != inst.k:
        raise DimensionMismatch(f"witness has {len(witness)} vectors for {inst.k} groups")
    cols = np.array([v.entries for v in witness], dtype=np.int64).reshape(inst.k, inst.source.d)
    # C[w, j, i] = (A_w v_i)_j
    coeffs = np.einsum("wjd,id->wji", inst._a, cols) % inst.p
    return Assignment.bilinear(inst, coeffs)


def check_test(asg: Mapping[Point, Value], t: RmTest, inst: RmCspInstance) -> bool:
    p, k = inst.p, inst.k
    vals = [np.asarray(asg[x], dtype=np.int64) for x in t.points]
    if t.family is RmFamily.LOW_DEGREE:
        coeffs = ldt_coefficients(LOW_DEGREE_ARITY - 2, inst.field)
        total = sum((c * v for c, v in zip(coeffs, vals)), np.zeros(inst.ell, dtype=np.int64))
        return not np.any(total % p)
    if t.family in (RmFamily.LINEARITY_ALPHA, RmFamily.LINEARITY_BETA):
        return not np.any((vals[0] + vals[1] - vals[2]) % p)
    diff = tuple(int(a) for a in (vals[1] - vals[0]) % p)
    alpha = t.anchor[:k]
    if t.family is RmFamily.NEIGHBOR:
        return diff in inst.neighbor_values(t.u, alpha)
    return diff == inst.wrap_value(alpha)


def failing_tests(
    asg: Mapping[Point, Value],
    inst: RmCspInstance,
    families: Sequence[RmFamily] = tuple(RmFamily),
    budget: int = BUDGET_ENUM,
) -> Dict[RmFamily, RmTest]:
    """First failing test per family; families that fully pass are absent."""
    out: Dict[RmFamily, RmTest] = {}
    for family in families:
        check_budget(f"{family.value} tests", family_size(inst, family), budget)
        for t in enumerate_tests(inst, family):
            if not check_test(asg, t, inst):
                out[family] = t
                break
    return out


def local_solutions(inst: RmCspInstance, t: RmTest) -> Iterator[Tuple[Value, ...]]:
    """
    Satisfying local assignments of a LD/LA/LB test, aligned to t.variables.

    The test is one linear equation applied per coordinate; coefficients of repeated
    points are merged. The last variable with a nonzero coefficient is solved for and
    the others range over F^l in lexicographic order.
    """
    coeffs = equation_coefficients(inst, t)
    p = inst.p
    variables = t.variables
    bound = [i for i, x in enumerate(variables) if coeffs.get(x, 0)]
    values = list(inst.values())
    if not bound:
        for combo in product(values, repeat=len(variables)):
            yield combo
        return
    dep = bound[-1]
    others = [i for i in range(len(variables)) if i != dep]
    inv = inst.field.inv(coeffs[variables[dep]])
    for combo in product(values, repeat=len(others)):
        acc = [0] * inst.ell
        for i, val in zip(others, combo):
            c = coeffs.get(variables[i], 0)
            if c:
                acc = [(a + c * b) % p for a, b in zip(acc, val)]
        solved = tuple((-a * inv) % p for a in acc)
        row: List[Value] = [()] * len(variables)
        for i, val in zip(others, combo):
            row[i] = val
        row[dep] = solved
        yield tuple(row)


def equation_coefficients(inst: RmCspInstance, t: RmTest) -> Dict[Point, int]:
    """Merged coefficients c_x with sum_x c_x * x-value = 0 for LD/LA/LB tests."""
    if t.family is RmFamily.LOW_DEGREE:
        raw = ldt_coefficients(LOW_DEGREE_ARITY - 2, inst.field)
    elif t.family in (RmFamily.LINEARITY_ALPHA, RmFamily.LINEARITY_BETA):
        raw = (1, 1, -1)
    else:
        raise PreconditionError(f"{t.family.value} tests are not single equations")
    out: Dict[Point, int] = {}
    for x, c in zip(t.points, raw):
        out[x] = (out.get(x, 0) + c) % inst.p
    return out


def local_solution_count(inst: RmCspInstance, t: RmTest) -> int:
    coeffs = equation_coefficients(inst, t)
    rank = 1 if any(coeffs.values()) else 0
    return inst.p ** (inst.ell * (len(t.variables) - rank))
