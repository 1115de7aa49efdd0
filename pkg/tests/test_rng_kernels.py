"""Coordinate-hash RNG and stepping-kernel backend parity."""

import numpy as np
import pytest

import episwitch as ep
from episwitch import _rng
from episwitch._kernels import BACKEND, backends
from episwitch.simulate import _csr, _pow_table


def test_hash_is_deterministic_and_distinct():
    a = int(_rng.hash_u64(1, 2, 3, 4))
    assert a == int(_rng.hash_u64(1, 2, 3, 4))
    assert a != int(_rng.hash_u64(1, 2, 3, 5))
    assert a != int(_rng.hash_u64(2, 2, 3, 4))


def test_uniforms_in_unit_interval_and_roughly_uniform():
    u = _rng.node_uniforms(123, 7, 200_000, _rng.INFECTION)
    assert ((0.0 <= u) & (u < 1.0)).all()
    # mean 1/2 within 5 sigma (sigma = 1/sqrt(12 n))
    assert abs(u.mean() - 0.5) < 5 / np.sqrt(12 * len(u))


def test_vector_and_scalar_paths_agree():
    u_vec = _rng.node_uniforms(42, 13, 10, _rng.RECOVERY)
    u_sca = [float(_rng.uniform(42, 13, i, _rng.RECOVERY)) for i in range(10)]
    assert np.array_equal(u_vec, np.array(u_sca))


@pytest.mark.skipif(not ep.HAVE_COMPILED, reason="compiled kernel not built")
def test_compiled_hash_matches_python():
    cy = backends()["cython"]
    for seed in (0, 1, 12345, 2**63, 2**64 - 1):
        for t in (0, 1, 499, 10**9):
            for node in (0, 7, 1999):
                for purpose in (1, 2, 3, 4, 5):
                    assert int(cy.hash_u64(seed, t, node, purpose)) == \
                        int(_rng.hash_u64(seed, t, node, purpose))


@pytest.mark.skipif(not ep.HAVE_COMPILED, reason="compiled kernel not built")
def test_step_backends_bit_identical():
    mods = backends()
    rng = np.random.default_rng(7)
    for trial in range(40):
        n = int(rng.integers(2, 80))
        g = ep.gen_gilbert(n, float(rng.uniform(0, 0.4)), int(rng.integers(1e9)))
        x = (rng.random(n) < 0.3).astype(np.uint8)
        beta = float(rng.random())
        delta = float(rng.random())
        indptr, indices = _csr(g)
        pt = _pow_table(g, beta)
        for reinf in (False, True):
            outs = [m.sis_step(g.a, indptr, indices, x, pt, delta, 99, trial, reinf)
                    for m in mods.values()]
            assert np.array_equal(outs[0], outs[1])


@pytest.mark.skipif(not ep.HAVE_COMPILED, reason="compiled kernel not built")
def test_full_runs_identical_across_backends(monkeypatch):
    policy = ep.IidUniform([ep.gen_regular(40, 4, s) for s in (1, 2)])
    params = ep.EpidemicParams(0.3, 0.2)
    run_active = ep.run_epidemic(policy, params, 0.2, 60, seed=5)

    mods = backends()
    ref = mods["python"]
    import episwitch.simulate as sim
    monkeypatch.setattr(sim, "_kernel_step", ref.sis_step)
    run_pure = sim.run_epidemic(policy, params, 0.2, 60, seed=5)
    assert np.array_equal(run_active.series, run_pure.series)
    assert run_active.died_out_at == run_pure.died_out_at


def test_active_backend_reported():
    assert BACKEND in ("cython", "python")
    assert ep.BACKEND == BACKEND


def test_env_var_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, EPISWITCH_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import episwitch; print(episwitch.BACKEND)"],
        capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
