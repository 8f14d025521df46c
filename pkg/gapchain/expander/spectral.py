"""Second eigenvalue of the normalized adjacency matrix."""
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import eigh
from scipy.sparse import csr_matrix

from gapchain import log
from gapchain.exceptions import ConvergenceError
from gapchain.gapchain_globals import DENSE_EIGEN_LIMIT, POWER_MAX_ITER, POWER_TOLERANCE
from gapchain.utilities import derive_seed

if TYPE_CHECKING:
    from gapchain.expander.regular import RegularGraph


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    method: str
    residual: float = 0.0
    iterations: int = 0


def _normalized(g: "RegularGraph") -> "np.ndarray":
    return g.adjacency_matrix().astype(float) / max(g.d, 1)


def spectral_lambda(
    g: "RegularGraph",
    dense_limit: int = DENSE_EIGEN_LIMIT,
    tol: float = POWER_TOLERANCE,
    max_iter: int = POWER_MAX_ITER,
) -> SpectralEstimate:
    """
    max |mu| over eigenvalues mu of A/d on the complement of the all-ones vector.

    Dense graphs use a full symmetric eigensolve of A/d - J/n. Larger graphs run power
    iteration on the square of A/d with the all-ones direction projected out.
    """
    if g.n == 1:
        return SpectralEstimate(0.0, "trivial")
    if g.n <= dense_limit:
        m = _normalized(g) - np.full((g.n, g.n), 1.0 / g.n)
        mus = eigh(m, eigvals_only=True)
        value = float(min(1.0, np.max(np.abs(mus))))
        return SpectralEstimate(value, "dense")
    return _power_lambda(g, tol, max_iter)


def _power_lambda(g: "RegularGraph", tol: float, max_iter: int) -> SpectralEstimate:
    rows = [idx // g.d for idx in range(g.n * g.d)]
    cols = [w for w, _ in g.rotation]
    a = csr_matrix((np.ones(len(rows)) / g.d, (rows, cols)), shape=(g.n, g.n))
    rng = np.random.default_rng(derive_seed(g.n * g.d, "spectral"))
    v = rng.standard_normal(g.n)
    v -= v.mean()
    v /= np.linalg.norm(v)
    estimate = 0.0
    residual = float("inf")
    for it in range(1, max_iter + 1):
        w = a @ (a @ v)
        w -= w.mean()
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return SpectralEstimate(0.0, "power", 0.0, it)
        new_estimate = float(v @ w)
        w /= norm
        residual = abs(new_estimate - estimate)
        v, estimate = w, new_estimate
        if residual < tol:
            value = float(min(1.0, np.sqrt(max(estimate, 0.0))))
            log.debug(f"power iteration converged after {it} steps, lambda {value:.12f}")
            return SpectralEstimate(value, "power", residual, it)
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", residual)
