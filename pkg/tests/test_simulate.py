"""Stochastic SIS simulation: step semantics, runs, and sweeps."""

import numpy as np
import pytest

import episwitch as ep
from episwitch.switching import SwitchState, matrix_at
from episwitch.thresholds import Verdict


def one_step(graph, infected, beta, delta, seed=0, t=0, reinfect=False):
    state = ep.SisState(np.asarray(infected, dtype=np.uint8), t)
    nxt = ep.mc_step(state, graph, ep.EpidemicParams(beta, delta), seed,
                     allow_reinfection=reinfect)
    return nxt.infected


def test_beta0_delta1_clears_everything():
    g = ep.complete_graph(6)
    out = one_step(g, np.ones(6), beta=0.0, delta=1.0)
    assert (out == 0).all()


def test_beta1_delta0_infects_all_neighbors():
    g = ep.star_graph(5)
    x = np.zeros(5)
    x[0] = 1  # hub infected
    out = one_step(g, x, beta=1.0, delta=0.0, seed=3)
    assert (out == 1).all()
    # leaf infected: only the hub catches
    x = np.zeros(5)
    x[2] = 1
    out = one_step(g, x, beta=1.0, delta=0.0, seed=3)
    assert out[0] == 1 and out[2] == 1 and out[1] == out[3] == out[4] == 0


def test_reinfection_semantics_flag():
    g = ep.Graph.from_edges(2, [(0, 1)])
    both = np.ones(2)
    # delta=1, beta=1: both recover; by default they cannot be reinfected
    assert (one_step(g, both, 1.0, 1.0) == 0).all()
    # with the flag, each recovering node is re-exposed to time-t infections
    assert (one_step(g, both, 1.0, 1.0, reinfect=True) == 1).all()


def test_single_edge_bernoulli_oracle():
    # 400 disjoint infected-susceptible edges per step: every susceptible
    # endpoint catches independently with probability beta
    n_edges, beta = 400, 0.3
    n = 2 * n_edges
    edges = [(2 * i, 2 * i + 1) for i in range(n_edges)]
    g = ep.Graph.from_edges(n, edges)
    x = np.zeros(n)
    x[::2] = 1
    catches = 0
    trials = 0
    for t in range(50):
        out = one_step(g, x, beta, delta=0.0, seed=77, t=t)
        catches += int(out[1::2].sum())
        trials += n_edges
    freq = catches / trials
    sigma = np.sqrt(beta * (1 - beta) / trials)
    assert abs(freq - beta) < 3 * sigma


def test_isolated_nodes_decay_rate():
    n, delta = 2000, 0.35
    g = ep.empty_graph(n)
    out = one_step(g, np.ones(n), beta=0.9, delta=delta, seed=5)
    frac = out.sum() / n
    sigma = np.sqrt(delta * (1 - delta) / n)
    assert abs(frac - (1 - delta)) < 3 * sigma


def test_single_step_monotone_coupling_in_beta():
    rng = np.random.default_rng(11)
    g = ep.gen_gilbert(30, 0.2, seed=2)
    for trial in range(20):
        x = (rng.random(30) < 0.4).astype(np.uint8)
        b_lo, b_hi = sorted(rng.random(2))
        delta = float(rng.random())
        lo = one_step(g, x, b_lo, delta, seed=trial, t=trial)
        hi = one_step(g, x, b_hi, delta, seed=trial, t=trial)
        assert (hi >= lo).all()  # common uniforms: never shrinks


def test_trajectory_coupling_breaks_beyond_one_step():
    # single-step monotonicity does not extend to whole trajectories: once
    # the runs disagree on a node, the higher-beta run can recover it in the
    # same step the lower-beta run infects it.  This documents why only the
    # one-step property is asserted above.
    g = ep.gen_gilbert(30, 0.2, seed=2)
    params_lo, params_hi = ep.EpidemicParams(0.2, 0.6), ep.EpidemicParams(0.9, 0.6)
    found = False
    for seed in range(40):
        x_lo = x_hi = ep.SisState(_random_state(seed), 0)
        for _ in range(30):
            x_lo = ep.mc_step(x_lo, g, params_lo, seed)
            x_hi = ep.mc_step(x_hi, g, params_hi, seed)
            if (x_lo.infected > x_hi.infected).any():
                found = True
                break
        if found:
            break
    assert found


def _random_state(seed):
    rng = np.random.default_rng(seed)
    return (rng.random(30) < 0.4).astype(np.uint8)


def test_meanfield_zero_horizon_trajectory():
    policy = ep.IidUniform([ep.star_graph(3)])
    states = ep.simulate_trajectory(policy, np.full(3, 0.4),
                                    ep.EpidemicParams(0.3, 0.2), 0, seed=1)
    assert states.shape == (1, 3)
    assert np.array_equal(states[0], np.full(3, 0.4))


def test_run_init_zero_is_dead():
    policy = ep.IidUniform([ep.star_graph(4)])
    run = ep.run_epidemic(policy, ep.EpidemicParams(0.9, 0.1), 0.0, 50, seed=1)
    assert run.died_out_at == 0
    assert (run.series == 0).all() and run.final_fraction == 0.0


def test_run_no_recovery_saturates():
    policy = ep.IidUniform([ep.star_graph(6)])
    run = ep.run_epidemic(policy, ep.EpidemicParams(0.5, 0.0), 0.2, 100, seed=2)
    assert run.died_out_at is None
    assert run.series[-1] == 1.0  # absorbing all-infected
    assert run.final_fraction > 0.9


def test_run_deterministic_and_seed_sensitive():
    policy = ep.IidUniform([ep.gen_regular(30, 4, 0), ep.gen_regular(30, 4, 1)])
    params = ep.EpidemicParams(0.3, 0.4)
    r1 = ep.run_epidemic(policy, params, 0.2, 80, seed=9)
    r2 = ep.run_epidemic(policy, params, 0.2, 80, seed=9)
    r3 = ep.run_epidemic(policy, params, 0.2, 80, seed=10)
    assert np.array_equal(r1.series, r2.series)
    assert r1.died_out_at == r2.died_out_at
    assert not np.array_equal(r1.series, r3.series)


def test_run_zero_is_absorbing():
    policy = ep.IidUniform([ep.star_graph(3)])
    run = ep.run_epidemic(policy, ep.EpidemicParams(0.2, 0.9), 1.0, 200, seed=4)
    assert run.died_out_at is not None
    assert (run.series[run.died_out_at:] == 0).all()
    assert (run.series[:run.died_out_at] > 0).all()


def test_run_matches_manual_stepping():
    graphs = [ep.gen_regular(12, 4, s) for s in (0, 1)]
    policy = ep.IidUniform(graphs)
    params = ep.EpidemicParams(0.4, 0.3)
    seed, horizon = 31, 40
    run = ep.run_epidemic(policy, params, 0.5, horizon, seed)

    from episwitch.simulate import _initial_infected
    x = _initial_infected(12, 0.5, seed)
    state, sw = ep.SisState(x, 0), SwitchState(policy, seed)
    series = [x.sum() / 12]
    for _ in range(horizon):
        g, sw = matrix_at(sw)
        state = ep.mc_step(state, g, params, seed)
        series.append(state.count / 12)
        if state.count == 0:
            break
    assert np.array_equal(run.series[:len(series)], series)


def test_final_fraction_window():
    policy = ep.IidUniform([ep.gen_regular(20, 4, 3)])
    run = ep.run_epidemic(policy, ep.EpidemicParams(0.5, 0.3), 0.5, 100, seed=6)
    assert run.final_fraction == pytest.approx(run.series[-10:].mean())


def test_subcritical_star_mostly_dies():
    policy = ep.IidUniform([ep.star_graph(3)])
    params = ep.EpidemicParams(0.1, 0.2)
    died = sum(ep.run_epidemic(policy, params, 1.0, 500, seed=s).died_out_at
               is not None for s in range(50))
    assert died >= 45


# -- sweep --------------------------------------------------------------------

def test_sweep_beta_zero_all_dies():
    policy = ep.IidUniform([ep.gen_regular(20, 4, 0)])
    rows = ep.sweep(policy, [(0.0, 0.4)], reps=5, horizon=200, seed=3)
    assert len(rows) == 1
    assert rows[0].dieout_prob == 1.0
    assert rows[0].final_frac_mean == 0.0


def test_sweep_row_fields_and_order():
    policy = ep.IidUniform([ep.star_graph(5), ep.empty_graph(5)])
    grid = [(0.1, 0.2), (0.3, 0.2)]
    rows = ep.sweep(policy, grid, reps=3, horizon=50, seed=8)
    assert [(r.beta, r.delta) for r in rows] == grid
    assert all(r.reps == 3 and r.T == 50 and r.seed == 8 for r in rows)
    assert all(r.jsr_lower <= r.jsr_upper + 1e-12 for r in rows)


def test_sweep_singleton_matches_static_verdict():
    g = ep.gen_gilbert(12, 0.4, 5)
    policy = ep.IidUniform([g])
    for beta in (0.02, 0.4):
        params = ep.EpidemicParams(beta, 0.3)
        row = ep.sweep(policy, [(beta, 0.3)], reps=2, horizon=50, seed=1)[0]
        static = ep.threshold_static(g, params)
        row_verdict = Verdict.DIES_OUT if row.jsr_upper < 1 else Verdict.SPREADS
        assert row_verdict == static.verdict
        assert row.jsr_lower == pytest.approx(static.values["jsr"], abs=1e-8)


def test_sweep_regular_boundary_small():
    graphs = [ep.gen_regular(60, 4, s) for s in range(3)]
    policy = ep.IidUniform(graphs)
    rows = ep.sweep(policy, [(0.025, 0.2), (0.1, 0.2)], reps=10, horizon=300,
                    seed=12, init_fraction=0.2)
    below, above = rows
    assert below.dieout_prob >= 0.9     # (beta/delta) k = 0.5
    assert above.final_frac_mean >= 0.1  # (beta/delta) k = 2
    assert above.dieout_prob <= 0.2


def test_sweep_gilbert_policy_uses_expected_bound():
    policy = ep.GilbertRegenerate(30, 0.1)
    row = ep.sweep(policy, [(0.2, 0.3)], reps=2, horizon=40, seed=2)[0]
    want = 1 - 0.3 + 29 * 0.2 * 0.1
    assert row.jsr_lower == pytest.approx(want)
    assert row.jsr_upper == pytest.approx(want)


def test_sweep_parallel_equals_sequential():
    policy = ep.IidUniform([ep.gen_regular(16, 4, 0), ep.gen_regular(16, 4, 1)])
    grid = [(0.05, 0.3), (0.2, 0.3), (0.5, 0.3)]
    seq = ep.sweep(policy, grid, reps=3, horizon=60, seed=21)
    par = ep.sweep(policy, grid, reps=3, horizon=60, seed=21, workers=2)
    assert seq == par
