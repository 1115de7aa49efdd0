"""Switching policies: the rule that picks the adjacency matrix at each step.

Per-step randomness is derived by hashing (master_seed, t), so matrix_at is
random-access: any step can be evaluated without replaying earlier ones, and
parallel sweeps stay reproducible.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import _rng
from .errors import ParameterError
from .graphs import Graph, gen_gilbert

__all__ = [
    "IidUniform",
    "IidWeighted",
    "Periodic",
    "FixedTrace",
    "GilbertRegenerate",
    "SwitchState",
    "matrix_at",
    "sample_sequence",
]


def _check_uniform_n(graphs):
    if not graphs:
        raise ParameterError("policy needs at least one graph")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise ParameterError("all graphs in a policy must share the same node count")
    return n


@dataclass(frozen=True)
class IidUniform:
    """Each step draws uniformly and independently from a fixed set."""

    graphs: tuple

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        _check_uniform_n(self.graphs)

    @property
    def n(self):
        return self.graphs[0].n

    def graph_at(self, seed, t):
        u = float(_rng.uniform(seed, t, 0, _rng.POLICY_CHOICE))
        return self.graphs[int(u * len(self.graphs))]

    def graph_set(self):
        return self.graphs

    def analysis_trace(self):
        return list(self.graphs)


@dataclass(frozen=True)
class IidWeighted:
    """Independent draws from a fixed set with given probabilities.

    Extension of the equal-probability baseline for when the switching law
    is not uniform.  Weights must be nonnegative and sum to 1 within 1e-9
    (then they are normalized exactly); anything further off is treated as a
    config bug rather than silently renormalized.
    """

    graphs: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        _check_uniform_n(self.graphs)
        w = np.asarray(self.weights, dtype=np.float64)
        if len(w) != len(self.graphs):
            raise ParameterError("need one weight per graph")
        if (w < 0).any():
            raise ParameterError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ParameterError(f"weights sum to {w.sum():.12g}, expected 1")
        w = w / w.sum()
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        object.__setattr__(self, "_cdf", np.cumsum(w))

    @property
    def n(self):
        return self.graphs[0].n

    def graph_at(self, seed, t):
        u = float(_rng.uniform(seed, t, 0, _rng.POLICY_CHOICE))
        idx = int(np.searchsorted(self._cdf, u, side="right"))
        return self.graphs[min(idx, len(self.graphs) - 1)]

    def graph_set(self):
        return self.graphs

    def analysis_trace(self):
        return list(self.graphs)


@dataclass(frozen=True)
class Periodic:
    """Deterministic repetition of a fixed sequence: A_t = seq[t mod T]."""

    sequence: tuple

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        _check_uniform_n(self.sequence)

    @property
    def n(self):
        return self.sequence[0].n

    @property
    def period(self):
        return len(self.sequence)

    def graph_at(self, seed, t):
        return self.sequence[t % len(self.sequence)]

    def graph_set(self):
        return self.sequence

    def analysis_trace(self):
        return list(self.sequence)


@dataclass(frozen=True)
class FixedTrace:
    """Explicit index list over a set; the trace repeats if t runs past it."""

    graphs: tuple
    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        _check_uniform_n(self.graphs)
        if not self.indices:
            raise ParameterError("trace must be nonempty")
        if any(not 0 <= i < len(self.graphs) for i in self.indices):
            raise ParameterError("trace index out of range")

    @property
    def n(self):
        return self.graphs[0].n

    def graph_at(self, seed, t):
        return self.graphs[self.indices[t % len(self.indices)]]

    def graph_set(self):
        return self.graphs

    def analysis_trace(self):
        return [self.graphs[i] for i in self.indices]


@dataclass(frozen=True)
class GilbertRegenerate:
    """A fresh Gilbert graph G(n, p) is drawn at every step (undirected)."""

    n: int
    p: float

    def __post_init__(self):
        if self.n <= 0:
            raise ParameterError("n must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p={self.p} outside [0, 1]")

    def graph_at(self, seed, t):
        return gen_gilbert(self.n, self.p, _rng.substream_seed(seed, t, _rng.GILBERT_EDGES))


@dataclass(frozen=True)
class SwitchState:
    """Value-type cursor over a policy: (policy, time index, master seed)."""

    policy: object
    seed: int
    t: int = 0


def matrix_at(state):
    """Graph at the current index plus the advanced state."""
    g = state.policy.graph_at(state.seed, state.t)
    return g, replace(state, t=state.t + 1)


def sample_sequence(policy, horizon, seed):
    """The first `horizon` graphs a fresh SwitchState would emit."""
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    state = SwitchState(policy, seed)
    out = []
    for _ in range(horizon):
        g, state = matrix_at(state)
        out.append(g)
    return out
