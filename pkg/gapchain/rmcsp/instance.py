"""CSP instances over the degree-2 Reed-Muller variable space."""
from itertools import product
from math import ceil, log2
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from gapchain.exceptions import DimensionMismatch, ParseError, VerificationFailed
from gapchain.ff import FieldMat, format_mat, parse_mat, stack_mats
from gapchain.gapchain_globals import BUDGET_ENUM
from gapchain.vectorsum import VectorSumInstance
from gapchain.vectorsum.instance import format_instance, parse_instance_lines

Point = Tuple[int, ...]
Value = Tuple[int, ...]


def default_ell(source: VectorSumInstance) -> int:
    """l = 2k + 4 * ceil(log2 n) with n the total number of vectors."""
    n = source.size
    return 2 * source.k + 4 * (ceil(log2(n)) if n > 1 else 0)


class RmCspInstance:
    """
    A VectorSum source together with matrices A_1..A_l in F^(k x d).

    Variables are points (alpha, beta) of F^2k stored as one tuple of 2k residues.
    Matrix properties are verified on construction unless `verify` is False.
    """

    def __init__(
        self,
        source: VectorSumInstance,
        mats: Sequence[FieldMat],
        verify: bool = True,
        budget: int = BUDGET_ENUM,
    ) -> None:
        if not mats:
            raise DimensionMismatch("at least one matrix is required")
        for m in mats:
            if m.n_rows != source.k or m.n_cols != source.d or m.field != source.field:
                raise DimensionMismatch(
                    f"matrix is {m.n_rows}x{m.n_cols}, expected {source.k}x{source.d}"
                )
        self.source = source
        self.mats = tuple(mats)
        self.field = source.field
        self.p = source.field.p
        self.k = source.k
        self.ell = len(self.mats)
        self._a = stack_mats(self.mats)
        self._neighbor_cache: Dict[Tuple[int, Point], FrozenSet[Value]] = {}
        self._wrap_cache: Dict[Point, Value] = {}
        self.report = None
        if verify:
            from gapchain.rmcsp.matrices import verify_matrix_properties

            self.report = verify_matrix_properties(self.mats, source, budget)
            if not self.report.ok:
                raise VerificationFailed(
                    f"matrices fail properties {self.report.failed()}", self.report
                )

    def f(self, alpha: Sequence[int], v: Sequence[int]) -> Value:
        """f(alpha, v) = (<alpha, A_w v>)_w."""
        av = self._a @ np.asarray(v, dtype=np.int64) % self.p
        return tuple(int(x) for x in av @ np.asarray(alpha, dtype=np.int64) % self.p)

    def neighbor_values(self, u: int, alpha: Point) -> FrozenSet[Value]:
        """{f(alpha, v) : v in V_u}."""
        key = (u, alpha)
        if key not in self._neighbor_cache:
            self._neighbor_cache[key] = frozenset(
                self.f(alpha, v.entries) for v in self.source.groups[u]
            )
        return self._neighbor_cache[key]

    def wrap_value(self, alpha: Point) -> Value:
        """f(alpha, target); zero for the default target."""
        if alpha not in self._wrap_cache:
            self._wrap_cache[alpha] = self.f(alpha, self.source.target.entries)
        return self._wrap_cache[alpha]

    def alphas(self) -> Iterator[Point]:
        return product(range(self.p), repeat=self.k)

    def variables(self) -> Iterator[Point]:
        return product(range(self.p), repeat=2 * self.k)

    def values(self) -> Iterator[Value]:
        return product(range(self.p), repeat=self.ell)

    def split(self, x: Point) -> Tuple[Point, Point]:
        return x[: self.k], x[self.k :]

    def group_count(self) -> int:
        return 8 * self.p ** (4 * self.k)


def format_rmcsp(inst: RmCspInstance) -> str:
    lines = [f"rmcsp {inst.ell}"]
    lines.extend(format_instance(inst.source).rstrip("\n").splitlines())
    for w, m in enumerate(inst.mats):
        lines.append(f"matrix {w + 1}")
        lines.extend(format_mat(m))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_rmcsp(text: str, verify: bool = True, budget: int = BUDGET_ENUM) -> RmCspInstance:
    lines = text.rstrip("\n").splitlines()
    head = lines[0].split() if lines else []
    if len(head) != 2 or head[0] != "rmcsp":
        raise ParseError("expected 'rmcsp <ell>' header", 1)
    try:
        ell = int(head[1])
    except ValueError:
        raise ParseError(f"bad matrix count {head[1]!r}", 1)
    source, pos = parse_instance_lines(lines, 1)
    mats: List[FieldMat] = []
    for w in range(ell):
        if pos >= len(lines) or lines[pos].split() != ["matrix", str(w + 1)]:
            raise ParseError(f"expected 'matrix {w + 1}'", pos + 1)
        block = lines[pos + 1 : pos + 1 + source.k]
        if len(block) != source.k:
            raise ParseError(f"matrix {w + 1} is truncated", len(lines))
        mats.append(parse_mat(block, source.field, source.d, first_line=pos + 2))
        pos += 1 + source.k
    if pos >= len(lines) or lines[pos].strip() != "end":
        raise ParseError("expected 'end'", pos + 1)
    if pos + 1 != len(lines):
        raise ParseError("trailing data after instance", pos + 2)
    return RmCspInstance(source, mats, verify=verify, budget=budget)


def instance_summary(inst: RmCspInstance) -> Dict[str, Optional[int]]:
    p, k, ell = inst.p, inst.k, inst.ell
    return {
        "k": k,
        "d": inst.source.d,
        "ell": ell,
        "k_prime": 8 * p ** (4 * k),
        "vertex_bound": 2 * p ** (4 * k + 4 * ell)
        + 2 * p ** (4 * k + 2 * ell)
        + 4 * p ** (4 * k + ell),
    }
