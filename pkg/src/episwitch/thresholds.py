"""Epidemic die-out criteria and the product-radius comparator.

The governing quantity is always compared against 1 with a tolerance band:
the underlying stability results are strict inequalities, so values within
the band are reported as Inconclusive rather than guessed.

Criteria that are exact (static, periodic, regular, symmetric-set) may report
Spreads.  Bracket-based verdicts for non-symmetric sets certify die-out when
the upper bound is below 1 and are otherwise Inconclusive with both bounds
reported — growth of the worst-case linearized sequence is not, by itself, a
proof that the epidemic spreads.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ParameterError
from .jsr import JsrBracket, MatrixSet, eig_radius, jsr_bracket
from .linalg import spectral_radius
from .meanfield import system_matrix

__all__ = [
    "Verdict",
    "ThresholdVerdict",
    "VERDICT_BAND",
    "build_system_set",
    "threshold_static",
    "threshold_periodic",
    "threshold_regular",
    "threshold_set",
    "product_spectral_radius",
    "periodic_jsr_bracket",
    "gilbert_spread_bound",
    "expected_column_sum",
    "mc_column_sum",
]

VERDICT_BAND = 1e-9  # |criterion - 1| inside the band -> Inconclusive


class Verdict(str, enum.Enum):
    DIES_OUT = "DiesOut"
    SPREADS = "Spreads"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ThresholdVerdict:
    """Outcome of one criterion, with the numbers that produced it."""

    verdict: Verdict
    criterion: str
    values: dict

    def to_json_dict(self):
        vals = {k: (None if isinstance(v, float) and math.isnan(v) else v)
                for k, v in self.values.items()}
        return {"criterion": self.criterion, "values": vals,
                "verdict": self.verdict.value}


def _verdict_from_value(value, exact):
    """Compare an (exact or certified) criterion value against 1."""
    if abs(value - 1.0) <= VERDICT_BAND:
        return Verdict.INCONCLUSIVE
    if value < 1.0:
        return Verdict.DIES_OUT
    return Verdict.SPREADS if exact else Verdict.INCONCLUSIVE


def build_system_set(graphs, params):
    """System matrices (1-delta) I + beta A_i for a list of graphs."""
    graphs = list(graphs)
    if not graphs:
        raise ParameterError("need at least one graph")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise DimensionMismatchError("graphs must share one node count")
    return MatrixSet(tuple(system_matrix(g, params) for g in graphs))


def threshold_static(g, params):
    """Static-network criterion: dies out iff beta/delta < 1/rho(A)."""
    rho_a = spectral_radius(g)
    jsr = 1.0 - params.delta + params.beta * rho_a
    ratio = params.beta / params.delta if params.delta > 0 else math.inf
    values = {"rho_a": rho_a, "jsr": jsr, "beta_over_delta": ratio}
    if params.delta == 0.0 and params.beta > 0.0 and rho_a > 0.0:
        # no recovery and a live contact structure: spreads, ratio infinite
        return ThresholdVerdict(Verdict.SPREADS, "static", values)
    return ThresholdVerdict(_verdict_from_value(jsr, exact=True), "static", values)


def product_spectral_radius(graphs, params):
    """rho of the ordered product of system matrices (Eq.-1-style comparator).

    Reported for comparison only: outside truly periodic switching this
    quantity is not a valid threshold.
    """
    graphs = list(graphs)
    if not graphs:
        raise ParameterError("need at least one graph")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise DimensionMismatchError("graphs must share one node count")
    prod = np.eye(n)
    for g in graphs:
        prod = prod @ system_matrix(g, params)
    return eig_radius(prod)


def threshold_periodic(sequence, params):
    """Periodic-network criterion: dies out iff rho(prod of one period) < 1."""
    rho = product_spectral_radius(sequence, params)
    values = {"rho_product": rho, "period": len(list(sequence))}
    return ThresholdVerdict(_verdict_from_value(rho, exact=True), "periodic", values)


def threshold_regular(k_bar, params):
    """Dynamic regular network criterion: dies out iff beta/delta < 1/k_bar."""
    if k_bar < 0:
        raise ParameterError("degree must be nonnegative")
    value = 1.0 - params.delta + params.beta * k_bar
    ratio = params.beta / params.delta if params.delta > 0 else math.inf
    values = {"k_bar": k_bar, "jsr": value, "beta_over_delta": ratio}
    if params.delta == 0.0 and params.beta > 0.0 and k_bar > 0:
        return ThresholdVerdict(Verdict.SPREADS, "regular", values)
    return ThresholdVerdict(_verdict_from_value(value, exact=True), "regular", values)


def threshold_set(graphs, params, max_depth=4, norm_id=None, wall_budget_s=None):
    """General dynamic-set criterion via the JSR.

    Symmetric sets use the exact shortcut (largest member spectral radius);
    non-symmetric sets get a certified bracket and never a Spreads verdict.
    Returns (ThresholdVerdict, JsrBracket).
    """
    mset = build_system_set(graphs, params)
    bracket = jsr_bracket(mset, max_depth=max_depth, norm_id=norm_id,
                          wall_budget_s=wall_budget_s)
    if mset.symmetric:
        value = bracket.lower  # == upper == max_i rho(M_i), exact
        verdict = _verdict_from_value(value, exact=True)
        values = {"jsr": value}
        return ThresholdVerdict(verdict, "jsr-symmetric", values), bracket
    values = {"jsr_lower": bracket.lower, "jsr_upper": bracket.upper}
    if bracket.upper < 1.0 - VERDICT_BAND:
        verdict = Verdict.DIES_OUT
    else:
        verdict = Verdict.INCONCLUSIVE
    return ThresholdVerdict(verdict, "jsr-bracket", values), bracket


def periodic_jsr_bracket(sequence, params, depth=3):
    """Bracket of the periodic system's per-step growth rate rho(prod)^(1/T).

    The one-period product is bracketed as a singleton set and the bounds are
    mapped to the per-step scale by the 1/T power.
    """
    sequence = list(sequence)
    t = len(sequence)
    prod = np.eye(sequence[0].n)
    for g in sequence:
        prod = prod @ system_matrix(g, params)
    inner = jsr_bracket(MatrixSet((prod,)), max_depth=depth)
    return JsrBracket(lower=inner.lower ** (1.0 / t),
                      upper=inner.upper ** (1.0 / t),
                      depth=inner.depth, norm_id=inner.norm_id)


# ---------------------------------------------------------------------------
# dynamic Gilbert networks


def gilbert_spread_bound(n, p, params):
    """Upper bound on the spreading probability for a dynamic Gilbert network.

    Returns (raw, clamped) where raw = 1 - delta + (n-1) beta p and clamped
    caps it at 1 (a bound above 1 is uninformative as a probability but still
    useful as an epidemic-strength measure).
    """
    if n < 2:
        raise ParameterError("need n >= 2")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p={p} outside [0, 1]")
    raw = 1.0 - params.delta + (n - 1) * params.beta * p
    return raw, min(1.0, raw)


def expected_column_sum(n, p, params, k):
    """Expected column sum of a length-k product of Gilbert system matrices:
    [1 - delta + (n-1) beta p]^k."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    return (1.0 - params.delta + (n - 1) * params.beta * p) ** k


def mc_column_sum(n, p, params, k, trials, seed, mode="iid", batch=20_000):
    """Monte Carlo estimate of the first-column sum of system-matrix products.

    Draws `trials` independent length-k products of Gilbert system matrices
    and averages the absolute sum of the first column.  `mode` selects how
    the random adjacency is sampled: "iid" draws every off-diagonal entry
    independently (the independence model behind the closed form);
    "symmetric" draws one coin per unordered pair, i.e. an undirected
    Gilbert graph.

    Returns (mean, standard error).
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if mode not in ("iid", "symmetric"):
        raise ParameterError(f"unknown sampling mode {mode!r}")
    rng = np.random.default_rng(seed)
    beta, delta = params.beta, params.delta
    shift = None  # first sample value; anchoring the sums avoids cancellation
    total = 0.0
    total_sq = 0.0
    done = 0
    eye = np.eye(n)
    while done < trials:
        b = min(batch, trials - done)
        # column 0 of M_1 ... M_k, accumulated right to left
        v = np.zeros((b, n))
        v[:, 0] = 1.0
        for _ in range(k):
            coins = rng.random((b, n, n)) < p
            if mode == "symmetric":
                upper = np.triu(coins, k=1)
                coins = upper | np.swapaxes(upper, 1, 2)
            a = coins.astype(np.float64)
            a *= beta
            a += (1.0 - delta) * eye
            if mode == "iid":
                a[:, np.arange(n), np.arange(n)] = 1.0 - delta  # kill diagonal coins
            v = np.einsum("bij,bj->bi", a, v)
        sums = np.abs(v).sum(axis=1)
        if shift is None:
            shift = float(sums[0])
        total += float((sums - shift).sum())
        total_sq += float(((sums - shift) ** 2).sum())
        done += b
    mean_shifted = total / trials
    var = max(total_sq / trials - mean_shifted ** 2, 0.0)
    std_err = math.sqrt(var / trials)
    return shift + mean_shifted, std_err
