"""Line tester for vector-valued low-degree functions, with self-correction."""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt
from typing import Optional, Sequence, Tuple

import numpy as np

from gapchain import log
from gapchain.exceptions import PreconditionError
from gapchain.ff import FieldVec, PrimeField, poly_eval
from gapchain.gapchain_globals import BUDGET_ENUM, MONTECARLO_TRIALS
from gapchain.ldt.tabulated import (
    TabulatedFunction,
    all_points,
    monomial_matrix,
    point_indices,
)
from gapchain.utilities import check_budget


def ldt_coefficients(d: int, field: PrimeField) -> Tuple[int, ...]:
    """alpha_i = (-1)^(i+1) * C(d+1, i) mod p for i = 0..d+1; needs p > 2d."""
    if d < 0:
        raise PreconditionError("degree must be non-negative")
    field.require_degree(d)
    return tuple((-1) ** (i + 1) * comb(d + 1, i) % field.p for i in range(d + 2))


@dataclass(frozen=True)
class LdtParams:
    field: PrimeField
    d: int
    alphas: Tuple[int, ...]

    @classmethod
    def for_degree(cls, d: int, field: PrimeField) -> "LdtParams":
        return cls(field, d, ldt_coefficients(d, field))

    def check(self, f: TabulatedFunction) -> None:
        if f.field != self.field:
            raise PreconditionError(f"tester over {self.field} applied to f over {f.field}")


@dataclass(frozen=True)
class RejectRate:
    rejected: int
    total: int
    exact: bool
    half_width: Optional[float] = None

    @property
    def rate(self) -> Fraction:
        return Fraction(self.rejected, self.total)

    @property
    def accepted(self) -> int:
        return self.total - self.rejected


@dataclass(frozen=True)
class DistanceReport:
    delta: Fraction
    exact: bool
    method: str


def _line_values(
    f: TabulatedFunction, xs: "np.ndarray", hs: "np.ndarray", steps: Sequence[int]
) -> "np.ndarray":
    """Values f(x + i h) for every row pair, shape (rows, len(steps), l)."""
    p = f.field.p
    i = np.array(steps, dtype=np.int64)
    pts = (xs[:, None, :] + i[None, :, None] * hs[:, None, :]) % p
    return f.table[point_indices(pts, p)]


def _rejects(
    f: TabulatedFunction, params: LdtParams, xs: "np.ndarray", hs: "np.ndarray"
) -> "np.ndarray":
    vals = _line_values(f, xs, hs, range(params.d + 2))
    alphas = np.array(params.alphas, dtype=np.int64)
    comb_ = (vals * alphas[None, :, None]).sum(axis=1) % f.field.p
    return comb_.any(axis=1)


def line_test(
    f: TabulatedFunction, x: Sequence[int], h: Sequence[int], params: LdtParams
) -> bool:
    """Accept iff sum_i alpha_i f(x + i h) = 0 over the d + 2 points of the line."""
    params.check(f)
    xs = np.array([list(x)], dtype=np.int64).reshape(1, f.m)
    hs = np.array([list(h)], dtype=np.int64).reshape(1, f.m)
    return not bool(_rejects(f, params, xs, hs)[0])


def reject_rate(
    f: TabulatedFunction,
    params: LdtParams,
    mode: str = "exhaustive",
    trials: int = MONTECARLO_TRIALS,
    seed: int = 0,
    budget: int = BUDGET_ENUM,
) -> RejectRate:
    """Fraction of (x, h) pairs the line test rejects, exact or sampled."""
    params.check(f)
    p, m = f.field.p, f.m
    if mode == "exhaustive":
        n = p ** m
        check_budget("line tests (p^2m)", n * n, budget)
        pts = all_points(p, m)
        xs = np.repeat(pts, n, axis=0)
        hs = np.tile(pts, (n, 1))
        rejected = int(_rejects(f, params, xs, hs).sum())
        return RejectRate(rejected, n * n, exact=True)
    if mode == "montecarlo":
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, p, size=(trials, m), dtype=np.int64)
        hs = rng.integers(0, p, size=(trials, m), dtype=np.int64)
        rejected = int(_rejects(f, params, xs, hs).sum())
        r = rejected / trials
        if rejected in (0, trials):
            # rule of three
            half_width = 3.0 / trials
        else:
            half_width = 1.96 * sqrt(r * (1 - r) / trials)
        return RejectRate(rejected, trials, exact=False, half_width=half_width)
    raise PreconditionError(f"unknown mode {mode!r}")


def self_correct(f: TabulatedFunction, x: Sequence[int], params: LdtParams) -> Tuple[int, ...]:
    """
    Majority over all h of sum_{i=1}^{d+1} alpha_i f(x + i h). Ties go to the
    lexicographically smallest value.
    """
    params.check(f)
    p = f.field.p
    hs = all_points(p, f.m)
    xs = np.tile(np.array(list(x), dtype=np.int64).reshape(1, f.m), (hs.shape[0], 1))
    vals = _line_values(f, xs, hs, range(1, params.d + 2))
    alphas = np.array(params.alphas[1:], dtype=np.int64)
    votes = (vals * alphas[None, :, None]).sum(axis=1) % p
    counts = Counter(tuple(int(a) for a in row) for row in votes)
    value, _ = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return value


def self_corrected_table(f: TabulatedFunction, params: LdtParams) -> TabulatedFunction:
    table = np.array([self_correct(f, x, params) for x in f.points()], dtype=np.int64)
    return TabulatedFunction(f.field, f.m, f.ell, table.reshape(f.size, f.ell))


def distance_to_degree(
    f: TabulatedFunction, d: int, budget: int = BUDGET_ENUM, exact: bool = True
) -> DistanceReport:
    """
    Minimum fraction of points where f differs from a degree-d map F^m -> F^l.

    Exact mode searches every coefficient tuple, p^(l * #monomials) of them. Otherwise
    the distance to the self-corrected function is returned as an estimate.
    """
    p, n = f.field.p, f.size
    if not exact:
        g = self_corrected_table(f, LdtParams.for_degree(d, f.field))
        differ = int((f.table != g.table).any(axis=1).sum())
        return DistanceReport(Fraction(differ, n), exact=False, method="self-correction")
    mono = monomial_matrix(p, f.m, d)
    n_mono = mono.shape[1]
    check_budget("degree-d coefficient space", p ** (f.ell * n_mono), budget)
    grid = np.indices((p,) * n_mono).reshape(n_mono, -1).T
    values = grid @ mono.T % p
    agree: Optional["np.ndarray"] = None
    for j in range(f.ell):
        match = values == f.table[:, j][None, :]
        if agree is None:
            agree = match
        else:
            agree = (agree[:, None, :] & match[None, :, :]).reshape(-1, n)
    best = n if agree is None else int(agree.sum(axis=1).max())
    log.debug(f"distance_to_degree: best agreement {best} of {n}")
    return DistanceReport(Fraction(n - best, n), exact=True, method="exhaustive")


def interpolation_identity_holds(coeffs: Sequence[FieldVec], params: LdtParams) -> bool:
    """sum_i alpha_i q(e + i) = 0 for every e, for the univariate q given by coeffs."""
    field = params.field
    for e in field.elements():
        acc = FieldVec.zero(field, len(coeffs[0]))
        for i, a in enumerate(params.alphas):
            acc = acc + poly_eval(coeffs, (e + i) % field.p).scale(a)
        if not acc.is_zero():
            return False
    return True


def soundness_floor(delta: Fraction, d: int) -> Fraction:
    """Rejection-rate lower bound min(delta, 1/(d+2)^2) / 2."""
    return min(delta, Fraction(1, (d + 2) ** 2)) / 2
