"""SIS epidemics on switching networks.

Simulates the mean-field and stochastic SIS dynamics when the contact graph
is redrawn from a set at every step, and decides epidemic die-out through
joint-spectral-radius analysis of the linearized system: certified brackets
for general sets, the exact largest-member shortcut for undirected sets, and
the classical static/periodic/regular criteria as special cases.
"""

from ._kernels import BACKEND, HAVE_COMPILED
from .errors import (ConfigError, ContractError, DimensionMismatchError,
                     EdgeListParseError, EpiSwitchError, NumericError,
                     ParameterError, ResourceBudgetError)
from .graphs import (EpidemicParams, Graph, complete_graph, empty_graph,
                     gen_barabasi_albert, gen_gilbert, gen_regular,
                     gen_watts_strogatz, read_edge_list, star_graph,
                     write_edge_list)
from .jsr import (JsrBracket, MatrixSet, jsr_bracket, jsr_symmetric,
                  rho_bar_k, rho_hat_k)
from .linalg import induced_norm, spectral_radius
from .meanfield import (EquilibriumResult, check_equilibrium, simulate_trajectory,
                        solve_equilibrium, step_linear, step_nonlinear,
                        system_matrix)
from .simulate import (EpidemicRun, SisState, SweepRow, mc_step, run_epidemic,
                       sweep)
from .switching import (FixedTrace, GilbertRegenerate, IidUniform, IidWeighted,
                        Periodic, SwitchState, matrix_at, sample_sequence)
from .thresholds import (ThresholdVerdict, Verdict, build_system_set,
                         expected_column_sum, gilbert_spread_bound,
                         mc_column_sum, periodic_jsr_bracket,
                         product_spectral_radius, threshold_periodic,
                         threshold_regular, threshold_set, threshold_static)

__version__ = "0.1.0"
