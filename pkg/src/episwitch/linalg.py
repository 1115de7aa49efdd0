"""Dominant-eigenvalue and induced-norm primitives for nonnegative matrices."""

import numpy as np

from .errors import ContractError, NumericError
from .graphs import Graph

__all__ = ["spectral_radius", "induced_norm", "NORM_IDS"]

NORM_IDS = ("1", "2", "inf")


def _as_matrix(m):
    if isinstance(m, Graph):
        return m.matrix()
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {a.shape}")
    if (a < 0).any():
        raise ContractError("spectral_radius requires a nonnegative matrix")
    return a


def spectral_radius(m, tol=1e-10, max_iter=100_000):
    """Largest eigenvalue modulus of a nonnegative square matrix (or Graph).

    Power iteration runs on A + I with the unit shift subtracted at the end;
    the shift defeats the sign oscillation of bipartite adjacencies while
    preserving the radius (rho(A + I) = rho(A) + 1 for nonnegative A).  The
    start vector is all-ones and convergence is measured by the relative
    change of the 1-norm growth ratio.

    Raises
    ------
    NumericError
        No convergence within max_iter; carries the last estimate.
    """
    a = _as_matrix(m)
    n = a.shape[0]
    if n == 0:
        return 0.0
    v = np.full(n, 1.0 / n)
    lam_prev = None
    for _ in range(max_iter):
        w = a @ v + v
        lam = w.sum()  # 1-norm of a nonnegative vector with ||v||_1 = 1
        v = w / lam
        if lam_prev is not None and abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            return lam - 1.0
        lam_prev = lam
    raise NumericError(
        f"power iteration did not converge in {max_iter} iterations",
        last_estimate=lam - 1.0)


def induced_norm(m, norm_id="1", tol=1e-12):
    """Induced matrix norm: "1" (max column sum), "inf" (max row sum), or
    "2" (spectral norm, computed as sqrt(rho(M^T M)) by power iteration)."""
    a = np.asarray(m, dtype=np.float64)
    if norm_id == "1":
        return float(np.abs(a).sum(axis=0).max())
    if norm_id == "inf":
        return float(np.abs(a).sum(axis=1).max())
    if norm_id == "2":
        gram = a.T @ a
        return float(np.sqrt(spectral_radius(gram, tol=tol)))
    raise ContractError(f"unknown norm id {norm_id!r}, expected one of {NORM_IDS}")
