"""Sampling and verification of the encoding matrices A_1..A_l."""
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tenacity import RetryError, Retrying, retry_if_result, stop_after_attempt

from gapchain import log
from gapchain.exceptions import PreconditionError, SamplingFailed
from gapchain.ff import FieldMat, nullspace_basis, rank_mod_p, stack_mats
from gapchain.gapchain_globals import BUDGET_ENUM, MAX_RETRIES
from gapchain.utilities import check_budget, derive_seed
from gapchain.vectorsum import VectorSumInstance

PROPERTIES = ("injective", "pair_separating", "triple_separating")


@dataclass
class MatrixReport:
    """
    Outcome of the three matrix checks.

    injective: A v != 0 for every nonzero v in scope (scope "full" when the stacked
    matrix has trivial kernel). pair_separating: f(alpha, u - v) != 0 for distinct u, v in
    one group and alpha != 0. triple_separating: f(alpha, u - w) + f(alpha', v - w) != 0 for
    distinct u, v, w in one group and (alpha, alpha') != 0.
    """

    injective: bool = True
    pair_separating: bool = True
    triple_separating: bool = True
    injective_scope: str = "full"
    witnesses: Dict[str, Tuple] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.injective and self.pair_separating and self.triple_separating

    def failed(self) -> List[str]:
        return [name for name in PROPERTIES if not getattr(self, name)]


def _nonzero(array: "np.ndarray") -> bool:
    return bool(np.any(array))


def _check_injective(
    stacked: "np.ndarray", source: VectorSumInstance, report: MatrixReport, budget: int
) -> None:
    p, d = source.field.p, source.d
    if d == 0:
        return
    flat = stacked.reshape(-1, d)
    if rank_mod_p(flat, p) == d:
        return
    scope = ["singles", "differences"]
    candidates: List[Tuple[int, ...]] = []
    for group in source.groups:
        candidates.extend(v.entries for v in group)
        candidates.extend((u - v).entries for u, v in combinations(group, 2))
    n_sums = 1
    for group in source.groups:
        n_sums *= len(group)
    if 0 < n_sums <= budget:
        scope.append("sums")
        target = np.asarray(source.target.entries, dtype=np.int64)
        for choice in np.ndindex(*(len(g) for g in source.groups)):
            total = sum(
                (np.asarray(g[i].entries, dtype=np.int64) for g, i in zip(source.groups, choice)),
                np.zeros(d, dtype=np.int64),
            )
            candidates.append(tuple(int(a) for a in (total - target) % p))
    report.injective_scope = "scoped:" + ",".join(scope)
    for v in candidates:
        vec = np.asarray(v, dtype=np.int64)
        if _nonzero(vec % p) and not _nonzero(flat @ vec % p):
            report.injective = False
            report.witnesses["injective"] = tuple(v)
            return


def _check_pairs(stacked: "np.ndarray", source: VectorSumInstance, report: MatrixReport) -> None:
    p, k = source.field.p, source.k
    for gi, group in enumerate(source.groups):
        for (i, u), (j, v) in combinations(enumerate(group), 2):
            diff = np.asarray((u - v).entries, dtype=np.int64)
            # f(alpha, diff) = (A diff)^T alpha, so failure means a nonzero kernel vector
            m = stacked @ diff % p
            if rank_mod_p(m, p) < k:
                report.pair_separating = False
                report.witnesses["pair_separating"] = (gi, i, j, nullspace_basis(m, p)[0])
                return


def _check_triples(
    stacked: "np.ndarray", source: VectorSumInstance, report: MatrixReport
) -> None:
    p, k = source.field.p, source.k
    for gi, group in enumerate(source.groups):
        vecs = [np.asarray(v.entries, dtype=np.int64) for v in group]
        for w in range(len(vecs)):
            rest = [i for i in range(len(vecs)) if i != w]
            for a, b in combinations(rest, 2):
                m = np.hstack([stacked @ (vecs[a] - vecs[w]), stacked @ (vecs[b] - vecs[w])]) % p
                if rank_mod_p(m, p) < 2 * k:
                    report.triple_separating = False
                    report.witnesses["triple_separating"] = (
                        gi,
                        a,
                        b,
                        w,
                        nullspace_basis(m, p)[0],
                    )
                    return


def verify_matrix_properties(
    mats: Sequence[FieldMat], source: VectorSumInstance, budget: int = BUDGET_ENUM
) -> MatrixReport:
    """Check all three properties exactly; refuse when the triple count exceeds the budget."""
    if not mats:
        raise PreconditionError("at least one matrix is required")
    pairs = sum(len(g) * (len(g) - 1) // 2 for g in source.groups)
    triples = sum(len(g) * (len(g) - 1) * (len(g) - 2) // 2 for g in source.groups)
    check_budget("pair_separating checks", pairs, budget)
    check_budget("triple_separating checks", triples, budget)
    stacked = stack_mats(mats)
    report = MatrixReport()
    _check_injective(stacked, source, report, budget)
    _check_pairs(stacked, source, report)
    _check_triples(stacked, source, report)
    log.debug(f"matrix properties: failed={report.failed()} scope={report.injective_scope}")
    return report


def sample_matrices(
    source: VectorSumInstance,
    ell: int,
    seed: int = 0,
    max_retries: int = MAX_RETRIES,
    budget: int = BUDGET_ENUM,
) -> Tuple[List[FieldMat], MatrixReport]:
    """
    Draw l uniform k x d matrices until all properties hold.

    Draws come from a generator seeded with derive_seed(seed, "matrices"), so the same
    seed always yields the same matrices. Raises SamplingFailed naming the property that
    failed most often once max_retries draws are used up.
    """
    if ell < 1:
        raise PreconditionError(f"l must be positive, got {ell}")
    field_ = source.field
    rng = np.random.default_rng(derive_seed(seed, "matrices"))
    failures: Counter = Counter()

    def draw() -> Tuple[List[FieldMat], MatrixReport]:
        arr = rng.integers(0, field_.p, size=(ell, source.k, source.d))
        mats = [FieldMat.from_array(field_, arr[w]) for w in range(ell)]
        report = verify_matrix_properties(mats, source, budget)
        failures.update(report.failed())
        if not report.ok:
            log.info(f"matrix draw rejected: {report.failed()}")
        return mats, report

    retrying = Retrying(
        stop=stop_after_attempt(max_retries),
        retry=retry_if_result(lambda result: not result[1].ok),
    )
    try:
        return retrying(draw)
    except RetryError:
        worst: Optional[str] = failures.most_common(1)[0][0] if failures else None
        raise SamplingFailed(
            f"no valid matrices after {max_retries} draws; most frequent failure: {worst}"
        )
