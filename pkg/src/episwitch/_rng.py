"""Counter-based randomness: hash (seed, t, node, purpose) -> uniform in [0, 1).

Every random decision in the simulator is addressed by coordinates instead of
drawn from a sequential stream.  That buys three things: random access (step t
can be computed without replaying 0..t-1), common-random-number coupling
(two parameter settings see the *same* uniforms), and exact agreement between
the compiled kernel and the numpy fallback, which reimplement the same mixing.

The mixer is the splitmix64 finalizer applied once per coordinate word.  The
compiled twin lives in ``_kernels/_siskern.pyx`` and must match bit for bit.
"""

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_PHI = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53

# purpose codes (shared with the Cython kernel; do not renumber)
RECOVERY = 1
INFECTION = 2
POLICY_CHOICE = 3
GILBERT_EDGES = 4
INIT_SAMPLE = 5


def _mix(h):
    """splitmix64 finalizer; h is a uint64 scalar or ndarray."""
    with np.errstate(over="ignore"):  # wraparound is the point
        h = h ^ (h >> np.uint64(30))
        h = h * _MIX1
        h = h ^ (h >> np.uint64(27))
        h = h * _MIX2
        h = h ^ (h >> np.uint64(31))
    return h


def _as_u64(x):
    if isinstance(x, np.ndarray):
        return x.astype(np.uint64, copy=False)
    return np.uint64(int(x) & _MASK)


def hash_u64(seed, t, node, purpose):
    """64-bit hash of the coordinate tuple; any argument may be an ndarray."""
    h = _mix(_as_u64(seed) ^ _PHI)
    h = _mix(h ^ _as_u64(t))
    h = _mix(h ^ _as_u64(node))
    h = _mix(h ^ _as_u64(purpose))
    return h


def uniform(seed, t, node, purpose):
    """Uniform deviate in [0, 1) addressed by (seed, t, node, purpose)."""
    bits = hash_u64(seed, t, node, purpose)
    return (bits >> np.uint64(11)) * _INV_2_53


def node_uniforms(seed, t, n, purpose):
    """Vector of n per-node uniforms for one time step."""
    return uniform(seed, t, np.arange(n, dtype=np.uint64), purpose)


def substream_seed(seed, *words):
    """Derive a child seed (plain int) for seeding numpy Generators."""
    h = _mix(_as_u64(seed) ^ _PHI)
    for w in words:
        h = _mix(h ^ _as_u64(w))
    return int(h)
