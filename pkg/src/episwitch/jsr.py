"""Joint-spectral-radius brackets for finite sets of nonnegative matrices.

For a set M and product length k, rho_hat_k is the largest induced norm and
rho_bar_k the largest spectral radius over all |M|^k ordered products.  The
four-member inequality

    rho_bar_k^{1/k}  <=  JSR  <=  rho_hat_j^{1/j}

holds for every k, j and every induced norm, so sweeping depths yields a
certified bracket.  For symmetric sets the induced-2 norm collapses the
bracket at depth 1: the JSR equals the largest member spectral radius.
"""

import time
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, ParameterError, ResourceBudgetError
from .linalg import NORM_IDS, induced_norm

__all__ = ["MatrixSet", "JsrBracket", "rho_hat_k", "rho_bar_k", "jsr_bracket",
           "jsr_symmetric", "PRODUCT_CAP"]

PRODUCT_CAP = 1_000_000  # max ordered products enumerated per depth


def eig_radius(m):
    """Spectral radius via dense eigenvalues.

    The enumeration below meets defective matrices (triangular products of
    directed-graph system matrices), where power iteration stalls at O(1/k)
    accuracy; LAPACK keeps the bracket bounds at machine precision.
    """
    return float(np.abs(np.linalg.eigvals(m)).max())


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """Nonempty set of square nonnegative matrices of one dimension."""

    matrices: tuple
    symmetric: bool = None

    def __post_init__(self):
        if not self.matrices:
            raise ParameterError("matrix set must be nonempty")
        mats = []
        for m in self.matrices:
            a = np.asarray(m, dtype=np.float64)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ParameterError(f"set members must be square, got {a.shape}")
            if (a < 0).any():
                raise ParameterError("set members must be nonnegative")
            a = a.copy()
            a.setflags(write=False)
            mats.append(a)
        n = mats[0].shape[0]
        if any(m.shape[0] != n for m in mats):
            raise ParameterError("set members must share one dimension")
        symmetric = all(np.array_equal(m, m.T) for m in mats)
        if self.symmetric is not None and bool(self.symmetric) != symmetric:
            raise ParameterError("symmetric flag inconsistent with matrices")
        object.__setattr__(self, "matrices", tuple(mats))
        object.__setattr__(self, "symmetric", symmetric)

    @property
    def n(self):
        return self.matrices[0].shape[0]

    def __len__(self):
        return len(self.matrices)


@dataclass(frozen=True)
class JsrBracket:
    """Certified bounds: lower <= JSR <= upper, explored to `depth`."""

    lower: float
    upper: float
    depth: int
    norm_id: str

    def __post_init__(self):
        if self.lower < 0 or self.upper < 0:
            raise ContractError("bracket bounds must be nonnegative")
        if self.lower > self.upper + 1e-12:
            raise ContractError(
                f"bracket inverted: lower={self.lower!r} > upper={self.upper!r}")


def _check_budget(mset, k, wall_deadline):
    if k < 1:
        raise ParameterError("product length k must be >= 1")
    count = len(mset) ** k
    if count > PRODUCT_CAP:
        raise ResourceBudgetError(
            f"{len(mset)}^{k} = {count} products exceeds the cap {PRODUCT_CAP}; "
            "use a smaller depth")
    if wall_deadline is not None and time.monotonic() > wall_deadline:
        raise ResourceBudgetError("wall budget exhausted during product enumeration")


def _max_over_products(mset, k, leaf_value, prune_norm_id, wall_deadline):
    """DFS over all length-k ordered products, maximizing leaf_value(product).

    A branch is pruned when norm(prefix) * max_norm^remaining cannot beat the
    best value found so far; submultiplicativity makes the bound sound for
    both the norm objective and the spectral-radius objective (rho <= norm),
    so pruning never removes the maximizer.
    """
    mats = mset.matrices
    max_norm = max(induced_norm(m, prune_norm_id) for m in mats)
    best = -np.inf
    ticker = 0

    def descend(prefix, remaining):
        nonlocal best, ticker
        ticker += 1
        if wall_deadline is not None and ticker % 256 == 0:
            if time.monotonic() > wall_deadline:
                raise ResourceBudgetError("wall budget exhausted during product enumeration")
        if remaining == 0:
            best = max(best, leaf_value(prefix))
            return
        if induced_norm(prefix, prune_norm_id) * max_norm ** remaining < best:
            return
        for m in mats:
            descend(prefix @ m, remaining - 1)

    for m in mats:
        descend(m, k - 1)
    return best


def rho_hat_k(mset, k, norm_id="1", wall_budget_s=None):
    """Largest induced norm over all length-k products from the set."""
    if norm_id not in NORM_IDS:
        raise ContractError(f"unknown norm id {norm_id!r}, expected one of {NORM_IDS}")
    deadline = None if wall_budget_s is None else time.monotonic() + wall_budget_s
    _check_budget(mset, k, deadline)
    return _max_over_products(
        mset, k, lambda prod: induced_norm(prod, norm_id), norm_id, deadline)


def rho_bar_k(mset, k, wall_budget_s=None):
    """Largest spectral radius over all length-k products from the set."""
    deadline = None if wall_budget_s is None else time.monotonic() + wall_budget_s
    _check_budget(mset, k, deadline)
    return _max_over_products(mset, k, eig_radius, "1", deadline)


def jsr_symmetric(mset):
    """Exact JSR of a symmetric set: the largest member spectral radius."""
    if not mset.symmetric:
        raise ContractError("jsr_symmetric requires a symmetric matrix set")
    return max(eig_radius(m) for m in mset.matrices)


def jsr_bracket(mset, max_depth=4, norm_id=None, wall_budget_s=None):
    """Certified JSR bracket from the four-member inequality.

    lower = max over k <= max_depth of rho_bar_k^{1/k}; upper = min of
    rho_hat_k^{1/k}.  Symmetric sets skip the search entirely: both bounds
    collapse to the largest member spectral radius at depth 1 (induced-2
    norm), whatever norm was requested.

    The default norm is induced-2 for symmetric sets and induced-1 otherwise.
    """
    if max_depth < 1:
        raise ParameterError("max_depth must be >= 1")
    if mset.symmetric:
        r = jsr_symmetric(mset)
        return JsrBracket(lower=r, upper=r, depth=1, norm_id="2")
    if norm_id is None:
        norm_id = "1"
    lower, upper = 0.0, np.inf
    for k in range(1, max_depth + 1):
        lower = max(lower, rho_bar_k(mset, k, wall_budget_s) ** (1.0 / k))
        upper = min(upper, rho_hat_k(mset, k, norm_id, wall_budget_s) ** (1.0 / k))
    return JsrBracket(lower=float(lower), upper=float(upper),
                      depth=max_depth, norm_id=norm_id)
