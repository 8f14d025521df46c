"""Random dispersers: l-subsets of [m] whose r-wise unions are nearly all of [m]."""
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
import math
from math import ceil, comb
from typing import Optional, Tuple, Union

import numpy as np

from gapchain import log
from gapchain.exceptions import ParseError, PreconditionError
from gapchain.gapchain_globals import BUDGET_ENUM, MONTECARLO_TRIALS
from gapchain.utilities import check_budget, derive_seed

UNVERIFIED = "unverified"
EXACT = "exact"
# l was capped at m: every union is all of [m] and no union property is shown
CAPPED = "capped"

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class Disperser:
    """
    k subsets of {0..m-1}, each of size l, with the union parameters (r, eps).

    `verified` is "exact", "montecarlo(<confidence>)", "capped" or "unverified".
    """

    m: int
    k: int
    ell: int
    r: int
    eps: Fraction
    subsets: Tuple[Tuple[int, ...], ...]
    verified: str = UNVERIFIED

    def __post_init__(self) -> None:
        if len(self.subsets) != self.k:
            raise PreconditionError(f"expected {self.k} subsets, got {len(self.subsets)}")
        for s in self.subsets:
            if len(s) != self.ell or len(set(s)) != self.ell:
                raise PreconditionError(f"subset {s} does not have {self.ell} distinct elements")
            if any(not 0 <= a < self.m for a in s):
                raise PreconditionError(f"subset {s} leaves [0, {self.m})")

    @property
    def threshold(self) -> Fraction:
        """(1 - eps) * m."""
        return (1 - self.eps) * self.m

    def masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << a for a in s) for s in self.subsets)


def disperser_ell(m: int, r: int, eps: Number) -> int:
    """ceil(3m / (eps * r)), computed exactly."""
    return ceil(Fraction(3 * m) / (Fraction(eps) * r))


def make_disperser(
    m: int, k: int, r: int, eps: Number, seed: int = 0, cap: bool = False
) -> Disperser:
    """
    k uniform l-subsets of [m] with l = ceil(3m / (eps r)).

    Requires ln k <= m / r and l <= m. With cap=True an oversized l is cut to m instead;
    the result is marked "capped", since every union is then all of [m].
    """
    eps = Fraction(eps).limit_denominator(10**6)
    if not 0 < eps < 1:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    if m < 1 or k < 1 or r < 1:
        raise PreconditionError(f"m, k and r must be positive (m={m}, k={k}, r={r})")
    if math.log(k) > m / r:
        raise PreconditionError(f"ln k = {math.log(k):.3f} exceeds m / r = {m / r:.3f}")
    ell = disperser_ell(m, r, eps)
    if ell > m:
        if not cap:
            raise PreconditionError(f"subset size {ell} exceeds m = {m}")
        log.warning(f"disperser subset size {ell} exceeds m = {m}; capped at {m}")
        ell = m
        verified = CAPPED
    else:
        verified = UNVERIFIED
    rng = np.random.default_rng(derive_seed(seed, "disperser"))
    subsets = tuple(
        tuple(sorted(int(a) for a in rng.choice(m, size=ell, replace=False))) for _ in range(k)
    )
    return Disperser(m, k, ell, r, eps, subsets, verified)


@dataclass
class DisperserReport:
    ok: bool
    mode: str
    checked: int
    violation: Optional[Tuple[int, ...]] = None
    union_size: Optional[int] = None
    violation_rate_bound: Optional[float] = None

    @property
    def status(self) -> str:
        if not self.ok:
            return UNVERIFIED
        if self.mode == EXACT:
            return EXACT
        return "montecarlo(0.95)"


def verify_disperser(
    d: Disperser,
    mode: str = EXACT,
    trials: int = MONTECARLO_TRIALS,
    seed: int = 0,
    budget: int = BUDGET_ENUM,
) -> DisperserReport:
    """
    Check that every union of r distinct subsets has at least (1 - eps) m elements.

    Exact mode visits all C(k, r) index sets in lexicographic order and stops at the
    first violation. Monte-Carlo mode samples `trials` index sets; with no violation
    the rate is bounded by 3 / trials at 95% confidence.
    """
    masks = d.masks()
    threshold = d.threshold
    if d.r > d.k:
        return DisperserReport(True, mode, 0)
    if mode == EXACT:
        check_budget("disperser r-subsets", comb(d.k, d.r), budget)
        checked = 0
        for idx in combinations(range(d.k), d.r):
            checked += 1
            union = 0
            for i in idx:
                union |= masks[i]
            size = bin(union).count("1")
            if size < threshold:
                log.info(f"disperser violation at {idx}: union {size} < {threshold}")
                return DisperserReport(False, mode, checked, idx, size)
        return DisperserReport(True, mode, checked)
    if mode != "montecarlo":
        raise PreconditionError(f"unknown verification mode {mode!r}")
    rng = np.random.default_rng(derive_seed(seed, "disperser-verify"))
    for n in range(1, trials + 1):
        idx = tuple(sorted(int(i) for i in rng.choice(d.k, size=d.r, replace=False)))
        union = 0
        for i in idx:
            union |= masks[i]
        size = bin(union).count("1")
        if size < threshold:
            return DisperserReport(False, mode, n, idx, size)
    return DisperserReport(True, mode, trials, violation_rate_bound=3.0 / trials)


def with_verification(d: Disperser, report: DisperserReport) -> Disperser:
    """A capped disperser stays capped even when its trivial unions pass."""
    if d.verified == CAPPED and report.ok:
        return d
    return replace(d, verified=report.status)


def format_disperser(d: Disperser) -> str:
    """Header `disperser m k l r eps verified`, then one subset per line."""
    lines = [f"disperser {d.m} {d.k} {d.ell} {d.r} {d.eps} {d.verified}"]
    lines.extend(" ".join(str(a) for a in s) for s in d.subsets)
    return "\n".join(lines) + "\n"


def parse_disperser(text: str) -> Disperser:
    lines = text.rstrip("\n").splitlines()
    head = lines[0].split() if lines else []
    if len(head) != 7 or head[0] != "disperser":
        raise ParseError("expected 'disperser m k l r eps verified' header", 1)
    try:
        m, k, ell, r = (int(a) for a in head[1:5])
        eps = Fraction(head[5])
    except ValueError:
        raise ParseError("malformed disperser header", 1)
    if len(lines) != k + 1:
        raise ParseError(f"expected {k} subsets, found {len(lines) - 1}", len(lines))
    subsets = []
    for pos, line in enumerate(lines[1:], start=2):
        try:
            subsets.append(tuple(int(a) for a in line.split()))
        except ValueError:
            raise ParseError(f"malformed subset {line!r}", pos)
    try:
        return Disperser(m, k, ell, r, eps, tuple(subsets), head[6])
    except PreconditionError as e:
        raise ParseError(str(e))
