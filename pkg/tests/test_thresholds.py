"""Die-out criteria, the product comparator, and the Gilbert machinery."""

import math

import numpy as np
import pytest

import episwitch as ep
from episwitch.errors import ParameterError
from episwitch.thresholds import Verdict, threshold_set

SQRT2 = math.sqrt(2)


@pytest.fixture
def star3():
    return ep.star_graph(3)


# -- static -----------------------------------------------------------------

def test_static_subcritical_dies_out(star3):
    v = ep.threshold_static(star3, ep.EpidemicParams(0.1, 0.2))
    assert v.verdict is Verdict.DIES_OUT
    assert abs(v.values["jsr"] - (0.8 + 0.1 * SQRT2)) < 1e-9


def test_static_supercritical_spreads(star3):
    v = ep.threshold_static(star3, ep.EpidemicParams(0.6, 0.2))
    assert v.verdict is Verdict.SPREADS


def test_static_empty_graph_dies_out():
    v = ep.threshold_static(ep.empty_graph(4), ep.EpidemicParams(1.0, 0.3))
    assert v.verdict is Verdict.DIES_OUT


def test_static_delta_zero_special_case(star3):
    v = ep.threshold_static(star3, ep.EpidemicParams(0.1, 0.0))
    assert v.verdict is Verdict.SPREADS
    assert v.values["beta_over_delta"] == math.inf


def test_static_knife_edge_inconclusive():
    cycle = ep.gen_regular(4, 2, seed=1)  # rho = 2
    v = ep.threshold_static(cycle, ep.EpidemicParams(0.1, 0.2))  # jsr = 1.0
    assert v.verdict is Verdict.INCONCLUSIVE


# -- periodic ---------------------------------------------------------------

def test_periodic_t1_reduces_to_static(star3):
    params = ep.EpidemicParams(0.37, 0.21)
    vp = ep.threshold_periodic([star3], params)
    vs = ep.threshold_static(star3, params)
    assert vp.verdict == vs.verdict
    assert abs(vp.values["rho_product"] - vs.values["jsr"]) < 1e-8


def test_periodic_star_empty_spreads(star3):
    params = ep.EpidemicParams(0.3536, 0.2)
    v = ep.threshold_periodic([star3, ep.empty_graph(3)], params)
    want = 0.8 * (0.8 + 0.3536 * SQRT2)
    assert abs(v.values["rho_product"] - want) < 1e-9
    assert v.verdict is Verdict.SPREADS


def test_periodic_empty_pair_dies(star3):
    v = ep.threshold_periodic([ep.empty_graph(3)] * 2, ep.EpidemicParams(0.9, 0.5))
    assert abs(v.values["rho_product"] - 0.25) < 1e-12
    assert v.verdict is Verdict.DIES_OUT


# -- regular ----------------------------------------------------------------

def test_regular_examples():
    assert ep.threshold_regular(8, ep.EpidemicParams(0.02, 0.2)).verdict \
        is Verdict.DIES_OUT
    assert ep.threshold_regular(8, ep.EpidemicParams(0.05, 0.2)).verdict \
        is Verdict.SPREADS
    assert ep.threshold_regular(0, ep.EpidemicParams(1.0, 0.4)).verdict \
        is Verdict.DIES_OUT
    assert ep.threshold_regular(3, ep.EpidemicParams(0.5, 0.0)).verdict \
        is Verdict.SPREADS
    with pytest.raises(ParameterError):
        ep.threshold_regular(-1, ep.EpidemicParams(0.1, 0.1))


# -- product comparator ------------------------------------------------------

def test_product_rho_singleton(star3):
    params = ep.EpidemicParams(0.25, 0.15)
    want = 1 - 0.15 + 0.25 * SQRT2
    assert abs(ep.product_spectral_radius([star3], params) - want) < 1e-9


def test_product_rho_disagreement_with_jsr(star3):
    params = ep.EpidemicParams(0.3, 0.2)
    pair = [star3, ep.empty_graph(3)]
    prod = ep.product_spectral_radius(pair, params)
    jsr = ep.jsr_symmetric(ep.build_system_set(pair, params))
    assert abs(prod - 0.97941) < 1e-4
    assert abs(jsr - 1.22426) < 1e-4
    assert prod < 1.0 < jsr


def test_product_rho_order_invariant_for_pairs(star3):
    params = ep.EpidemicParams(0.3, 0.2)
    g2 = ep.gen_gilbert(3, 0.9, 1)
    fwd = ep.product_spectral_radius([star3, g2], params)
    rev = ep.product_spectral_radius([g2, star3], params)
    assert abs(fwd - rev) < 1e-10  # rho(AB) = rho(BA)


# -- set criterion -----------------------------------------------------------

def test_threshold_set_symmetric_spreads(star3):
    params = ep.EpidemicParams(0.5, 0.2)
    verdict, bracket = threshold_set([star3, ep.Graph.from_edges(3, [(0, 1)])],
                                     params)
    assert verdict.criterion == "jsr-symmetric"
    assert abs(verdict.values["jsr"] - (0.8 + 0.5 * SQRT2)) < 1e-9
    assert verdict.verdict is Verdict.SPREADS
    assert bracket.lower == bracket.upper


def test_threshold_set_directed_straddle_inconclusive():
    a1 = ep.Graph(2, np.array([[0, 1], [0, 0]], dtype=np.uint8), directed=True)
    a2 = ep.Graph(2, np.array([[0, 0], [1, 0]], dtype=np.uint8), directed=True)
    verdict, bracket = threshold_set([a1, a2], ep.EpidemicParams(0.3, 0.2),
                                     max_depth=4)
    assert bracket.lower < 1.0 < bracket.upper  # genuinely straddling
    assert verdict.verdict is Verdict.INCONCLUSIVE
    assert verdict.values == {"jsr_lower": bracket.lower,
                              "jsr_upper": bracket.upper}


def test_threshold_set_directed_growing_still_not_spreads():
    # certified growth of the linearization, but Spreads is reserved for
    # exact criteria
    a1 = ep.Graph(2, np.array([[0, 1], [0, 0]], dtype=np.uint8), directed=True)
    a2 = ep.Graph(2, np.array([[0, 0], [1, 0]], dtype=np.uint8), directed=True)
    verdict, bracket = threshold_set([a1, a2], ep.EpidemicParams(0.5, 0.2),
                                     max_depth=4)
    assert bracket.lower > 1.0
    assert verdict.verdict is Verdict.INCONCLUSIVE


def test_threshold_set_dies_out_when_upper_below_one():
    a1 = ep.Graph(2, np.array([[0, 1], [0, 0]], dtype=np.uint8), directed=True)
    a2 = ep.Graph(2, np.array([[0, 0], [1, 0]], dtype=np.uint8), directed=True)
    verdict, bracket = threshold_set([a1, a2], ep.EpidemicParams(0.05, 0.5),
                                     max_depth=4)
    assert bracket.upper < 1.0
    assert verdict.verdict is Verdict.DIES_OUT


def test_static_consistency_with_singleton_bracket():
    rng = np.random.default_rng(8)
    for i in range(10):
        g = ep.gen_gilbert(6, float(rng.uniform(0.2, 0.8)), seed=i)
        params = ep.EpidemicParams(float(rng.uniform(0.05, 0.9)),
                                   float(rng.uniform(0.05, 0.95)))
        vs = ep.threshold_static(g, params)
        vset, _ = threshold_set([g], params)
        assert vs.verdict == vset.verdict


def test_periodic_consistency_with_singleton_product_bracket():
    rng = np.random.default_rng(18)
    for i in range(5):
        t = int(rng.integers(1, 4))
        seq = [ep.gen_gilbert(5, 0.5, seed=10 * i + j) for j in range(t)]
        params = ep.EpidemicParams(0.3, 0.4)
        rho_root = ep.product_spectral_radius(seq, params) ** (1.0 / t)
        br = ep.periodic_jsr_bracket(seq, params, depth=3 * t)
        assert br.lower - 1e-9 <= rho_root <= br.upper + 1e-9


# -- Gilbert bound and column sums --------------------------------------------

def test_gilbert_bound_spot_values():
    raw, clamped = ep.gilbert_spread_bound(1000, 0.004, ep.EpidemicParams(0.01, 0.95))
    assert abs(raw - 0.09) < 0.005 and clamped == raw
    raw, clamped = ep.gilbert_spread_bound(1000, 0.004, ep.EpidemicParams(0.8, 0.2))
    assert abs(raw - 4.0) < 0.005 and clamped == 1.0
    with pytest.raises(ParameterError):
        ep.gilbert_spread_bound(1, 0.5, ep.EpidemicParams(0.1, 0.1))


def test_expected_column_sum_values():
    params = ep.EpidemicParams(0.1, 0.2)
    assert abs(ep.expected_column_sum(10, 0.5, params, 1) - 1.25) < 1e-15
    assert abs(ep.expected_column_sum(10, 0.5, params, 3) - 1.953125) < 1e-12
    dead = ep.EpidemicParams(0.0, 1.0)
    for k in (1, 2, 5):
        assert ep.expected_column_sum(10, 0.5, dead, k) == 0.0


def test_mc_column_sum_beta_zero_exact():
    params = ep.EpidemicParams(0.0, 0.3)
    mean, se = ep.mc_column_sum(6, 0.4, params, 3, trials=2000, seed=1)
    assert se == 0.0
    assert abs(mean - 0.7 ** 3) < 1e-12


@pytest.mark.parametrize("mode", ["iid", "symmetric"])
def test_mc_column_sum_matches_formula(mode):
    params = ep.EpidemicParams(0.1, 0.2)
    for k in (1, 2, 3):
        mean, se = ep.mc_column_sum(10, 0.3, params, k, trials=20_000,
                                    seed=100 + k, mode=mode)
        want = ep.expected_column_sum(10, 0.3, params, k)
        assert abs(mean - want) <= 3 * se


def test_verdict_json_shape(star3):
    v = ep.threshold_static(star3, ep.EpidemicParams(0.1, 0.2))
    doc = v.to_json_dict()
    assert doc["verdict"] == "DiesOut" and doc["criterion"] == "static"
    assert set(doc["values"]) == {"rho_a", "jsr", "beta_over_delta"}
