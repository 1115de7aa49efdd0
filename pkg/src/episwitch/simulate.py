"""Agent-based stochastic SIS simulation on switching networks.

Updates are synchronous: every infected node recovers with probability delta,
every susceptible node with m infected in-neighbors catches with probability
1 - (1 - beta)^m, and by default a node that recovers in a step cannot be
reinfected in that same step (the two disjoint terms of the mean-field map).
Setting allow_reinfection=True switches to the variant where a recovering
node is immediately exposed to this step's infections.

All uniforms are addressed by (seed, t, node, purpose), so runs are
reproducible, random-access, and identical across the compiled and numpy
backends; raising beta with everything else fixed can only grow the next
infected set computed from a common state (common-random-number coupling).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _rng
from ._kernels import BACKEND, sis_step as _kernel_step
from .errors import DimensionMismatchError, ParameterError
from .graphs import EpidemicParams
from .jsr import jsr_bracket
from .switching import GilbertRegenerate, SwitchState, matrix_at, sample_sequence
from .thresholds import build_system_set, gilbert_spread_bound, \
    product_spectral_radius

__all__ = ["SisState", "EpidemicRun", "SweepRow", "mc_step", "run_epidemic",
           "sweep", "BACKEND"]


@dataclass(frozen=True)
class SisState:
    """Infection flags (uint8 vector) at a time index."""

    infected: np.ndarray
    t: int = 0

    def __post_init__(self):
        x = np.ascontiguousarray(self.infected, dtype=np.uint8)
        if x.ndim != 1 or not np.isin(x, (0, 1)).all():
            raise ParameterError("infected must be a vector of 0/1 flags")
        x.setflags(write=False)
        object.__setattr__(self, "infected", x)

    @property
    def count(self):
        return int(self.infected.sum())


@dataclass(frozen=True)
class EpidemicRun:
    """One realization: fraction infected over time plus summary fields.

    series[t] is the infected fraction at time t (length horizon + 1);
    died_out_at is the first t with zero infected (None if never);
    final_fraction averages the last max(10, horizon // 10) steps.
    """

    series: np.ndarray
    died_out_at: int | None
    final_fraction: float


def _csr(graph):
    rows, cols = np.nonzero(graph.a)
    counts = np.bincount(rows, minlength=graph.n)
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, cols.astype(np.int64)


def _pow_table(graph, beta):
    max_m = int(graph.a.sum(axis=1).max()) if graph.n else 0
    # successive multiplication; both backends index this same table
    return np.concatenate(([1.0], np.cumprod(np.full(max_m, 1.0 - beta))))


class _StepContext:
    """Per-run cache of CSR layout and escape tables keyed by graph."""

    def __init__(self, beta, cache=True):
        self.beta = beta
        self.cache = {} if cache else None

    def tables(self, graph):
        if self.cache is None:
            return _csr(graph) + (_pow_table(graph, self.beta),)
        key = id(graph)
        hit = self.cache.get(key)
        if hit is None:
            # keep the graph alive so the id key cannot be recycled
            hit = (graph,) + _csr(graph) + (_pow_table(graph, self.beta),)
            self.cache[key] = hit
        return hit[1], hit[2], hit[3]


def mc_step(state, graph, params, seed, allow_reinfection=False):
    """One synchronous stochastic step; deterministic in (seed, state.t)."""
    if graph.n != len(state.infected):
        raise DimensionMismatchError(
            f"graph has {graph.n} nodes, state has {len(state.infected)}")
    indptr, indices, pow_table = _csr(graph) + (_pow_table(graph, params.beta),)
    nxt = _kernel_step(graph.a, indptr, indices, state.infected, pow_table,
                       params.delta, seed, state.t, allow_reinfection)
    return SisState(nxt, state.t + 1)


def _initial_infected(n, init_fraction, seed):
    if not 0.0 <= init_fraction <= 1.0:
        raise ParameterError(f"init_fraction={init_fraction} outside [0, 1]")
    count = int(round(init_fraction * n))
    x = np.zeros(n, dtype=np.uint8)
    if count:
        rng = np.random.default_rng(_rng.substream_seed(seed, _rng.INIT_SAMPLE))
        x[rng.choice(n, size=count, replace=False)] = 1
    return x


def run_epidemic(policy, params, init_fraction, horizon, seed,
                 allow_reinfection=False):
    """Simulate one stochastic epidemic under a switching policy.

    The initial infected set is a uniform sample of round(init_fraction * n)
    nodes.  The run short-circuits once the infection is extinct (zero is
    absorbing); the series is zero-filled from that point on.
    """
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    n = policy.n
    x = _initial_infected(n, init_fraction, seed)
    series = np.zeros(horizon + 1)
    series[0] = x.sum() / n
    died_out_at = 0 if x.sum() == 0 else None
    ctx = _StepContext(params.beta, cache=not isinstance(policy, GilbertRegenerate))
    state = SwitchState(policy, seed)
    if died_out_at is None:
        for t in range(horizon):
            g, state = matrix_at(state)
            if g.n != n:
                raise DimensionMismatchError("policy emitted a graph of wrong size")
            indptr, indices, pow_table = ctx.tables(g)
            x = _kernel_step(g.a, indptr, indices, x, pow_table, params.delta,
                             seed, t, allow_reinfection)
            count = int(x.sum())
            series[t + 1] = count / n
            if count == 0:
                died_out_at = t + 1
                break
    window = max(10, horizon // 10)
    final_fraction = float(series[-window:].mean()) if horizon + 1 >= window \
        else float(series.mean())
    return EpidemicRun(series=series, died_out_at=died_out_at,
                       final_fraction=final_fraction)


# ---------------------------------------------------------------------------
# parameter sweeps


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep; field order matches the CSV schema."""

    beta: float
    delta: float
    jsr_lower: float
    jsr_upper: float
    product_rho: float
    dieout_prob: float
    final_frac_mean: float
    final_frac_std: float
    reps: int
    T: int
    seed: int


def _policy_jsr(policy, params, max_depth, norm_id):
    if isinstance(policy, GilbertRegenerate):
        # no finite matrix set exists; report the expected JSR of the
        # redrawn system matrices, 1 - delta + (n-1) beta p
        raw, _ = gilbert_spread_bound(policy.n, policy.p, params)
        return raw, raw
    bracket = jsr_bracket(build_system_set(policy.graph_set(), params),
                          max_depth=max_depth, norm_id=norm_id)
    return bracket.lower, bracket.upper


def _policy_product_rho(policy, params, seed):
    if isinstance(policy, GilbertRegenerate):
        trace = sample_sequence(policy, 1, seed)
    else:
        trace = policy.analysis_trace()
    return product_spectral_radius(trace, params)


def _sweep_row(policy, beta, delta, reps, horizon, seed, grid_index,
               init_fraction, max_depth, norm_id, allow_reinfection):
    params = EpidemicParams(beta, delta)
    lower, upper = _policy_jsr(policy, params, max_depth, norm_id)
    product_rho = _policy_product_rho(policy, params, seed)
    finals = np.empty(reps)
    died = 0
    for r in range(reps):
        rep_seed = _rng.substream_seed(seed, grid_index, r)
        run = run_epidemic(policy, params, init_fraction, horizon, rep_seed,
                           allow_reinfection)
        finals[r] = run.final_fraction
        died += run.died_out_at is not None
    return SweepRow(beta=beta, delta=delta, jsr_lower=lower, jsr_upper=upper,
                    product_rho=product_rho, dieout_prob=died / reps,
                    final_frac_mean=float(finals.mean()),
                    final_frac_std=float(finals.std()),
                    reps=reps, T=horizon, seed=seed)


def sweep(policy, grid, reps, horizon, seed, init_fraction=0.2, max_depth=4,
          norm_id=None, allow_reinfection=False, workers=None):
    """Run the (beta, delta) grid; one SweepRow per point, in grid order.

    Every rep owns an independent hashed seed derived from (seed, grid index,
    rep), so rows are reproducible and independent of execution order; with
    workers > 1 grid points are evaluated in parallel processes and assembled
    back in grid order.
    """
    grid = list(grid)
    if not grid:
        raise ParameterError("grid must be nonempty")
    args = [(policy, beta, delta, reps, horizon, seed, gi, init_fraction,
             max_depth, norm_id, allow_reinfection)
            for gi, (beta, delta) in enumerate(grid)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_row_star, args))
    return [_sweep_row_star(a) for a in args]


def _sweep_row_star(args):
    return _sweep_row(*args)
