"""Pure-numpy SIS stepping kernel, the fallback backend.

Must stay bit-identical to the compiled kernel in _siskern.pyx: both consume
the same hashed per-(node, step, purpose) uniforms and the same precomputed
escape-probability table, so trajectories agree exactly across backends.
"""

import numpy as np

from .. import _rng

BACKEND_NAME = "python"


def sis_step(adj_u8, indptr, indices, infected_u8, pow_table, delta, seed, t,
             allow_reinfection):
    """One synchronous SIS step; returns the next infected uint8 vector.

    pow_table[m] must hold (1 - beta)^m computed by successive multiplication.
    """
    x = infected_u8.astype(np.int64)
    m = adj_u8 @ x  # infected in-neighbor counts
    p_inf = 1.0 - pow_table[m]
    n = len(x)
    u_rec = _rng.node_uniforms(seed, t, n, _rng.RECOVERY)
    u_inf = _rng.node_uniforms(seed, t, n, _rng.INFECTION)
    catches = u_inf < p_inf
    is_inf = infected_u8.astype(bool)
    stays = u_rec >= delta
    if allow_reinfection:
        nxt = np.where(is_inf, stays | catches, catches)
    else:
        nxt = np.where(is_inf, stays, catches)
    return nxt.astype(np.uint8)
