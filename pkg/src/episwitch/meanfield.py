"""Deterministic infection-probability dynamics, equilibria, linearization.

One step of the nonlinear map for node i:

    p_i' = 1 - p_i * delta - (1 - p_i) * prod_{j in N_i} (1 - p_j * beta)

The state space [0, 1]^n is closed under this map; the implementation never
clamps and instead asserts membership (a violation is an implementation bug,
not bad data).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionMismatchError
from .switching import SwitchState, matrix_at

__all__ = [
    "step_nonlinear",
    "step_linear",
    "system_matrix",
    "simulate_trajectory",
    "solve_equilibrium",
    "check_equilibrium",
    "EquilibriumResult",
]

_SLACK = 1e-12  # rounding slack when checking [0, 1] membership


def _check_state(p, n=None):
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1:
        raise DimensionMismatchError(f"state must be a vector, got shape {p.shape}")
    if n is not None and len(p) != n:
        raise DimensionMismatchError(f"state has {len(p)} entries, graph has {n} nodes")
    if (p < -_SLACK).any() or (p > 1.0 + _SLACK).any():
        raise ContractError("state entries must lie in [0, 1]")
    return p


def step_nonlinear(p, g, params):
    """One synchronous update of all infection probabilities."""
    p = _check_state(p, g.n)
    escape = 1.0 - params.beta * p  # per-neighbor miss probability
    no_infection = np.prod(np.where(g.a > 0, escape[np.newaxis, :], 1.0), axis=1)
    nxt = 1.0 - p * params.delta - (1.0 - p) * no_infection
    if (nxt < -_SLACK).any() or (nxt > 1.0 + _SLACK).any():
        raise ContractError("nonlinear step left [0, 1]; implementation bug")
    return nxt


def system_matrix(g, params):
    """Linearization at the origin: M = (1 - delta) I + beta A."""
    m = params.beta * g.matrix()
    np.fill_diagonal(m, m.diagonal() + (1.0 - params.delta))
    return m


def step_linear(p, m):
    """One step of the linearized system, the plain product M @ p.

    Entries may exceed 1; the linear model is not probability-clamped.
    """
    p = np.asarray(p, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    if m.shape[1] != len(p):
        raise DimensionMismatchError(f"matrix {m.shape} vs state length {len(p)}")
    return m @ p


def simulate_trajectory(policy, p0, params, horizon, seed):
    """Iterate the nonlinear map under a switching policy.

    Returns an array of shape (horizon + 1, n); row t is the state at time t.
    """
    p = _check_state(p0, policy.n)
    states = np.empty((horizon + 1, len(p)))
    states[0] = p
    state = SwitchState(policy, seed)
    for t in range(horizon):
        g, state = matrix_at(state)
        p = step_nonlinear(p, g, params)
        states[t + 1] = p
    return states


@dataclass(frozen=True)
class EquilibriumResult:
    """Outcome of the fixed-point solve; honest about non-convergence."""

    p: np.ndarray
    residual: float
    iterations: int
    converged: bool


def solve_equilibrium(g, params, p0=None, tol=1e-10, max_iter=1_000_000, damping=1.0):
    """Fixed point of the nonlinear map on a static graph.

    Plain fixed-point iteration of the map itself, optionally damped
    (p <- (1-c) p + c f(p), damping c in (0, 1]).  Near the threshold
    convergence slows; the result reports iterations and residual instead of
    failing silently.
    """
    if not 0.0 < damping <= 1.0:
        raise ContractError(f"damping must be in (0, 1], got {damping}")
    p = np.full(g.n, 0.5) if p0 is None else _check_state(p0, g.n).copy()
    residual = np.inf
    for it in range(1, max_iter + 1):
        nxt = step_nonlinear(p, g, params)
        if damping != 1.0:
            nxt = (1.0 - damping) * p + damping * nxt
        residual = float(np.max(np.abs(nxt - p)))
        p = nxt
        if residual <= tol:
            return EquilibriumResult(p, residual, it, True)
    return EquilibriumResult(p, residual, max_iter, False)


def check_equilibrium(p, graphs, params, tol=1e-10):
    """True iff p is a fixed point of the map under every graph in the set."""
    p = _check_state(p)
    for g in graphs:
        nxt = step_nonlinear(p, g, params)
        if np.max(np.abs(nxt - p)) > tol:
            return False
    return True
