# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled SIS stepping kernel.

Twin of _reference.py: the splitmix64-based coordinate hash below must match
episwitch._rng bit for bit, and the step semantics must reproduce the numpy
backend exactly.  The CSR neighbor walk makes the per-step cost proportional
to the edge count instead of n^2.
"""

from libc.stdint cimport int64_t, uint8_t, uint64_t

DEF INV_2_53 = 1.0 / 9007199254740992.0

cdef uint64_t PHI = 0x9E3779B97F4A7C15u
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9u
cdef uint64_t MIX2 = 0x94D049BB133111EBu

# purpose codes, shared with episwitch._rng
cdef uint64_t RECOVERY = 1
cdef uint64_t INFECTION = 2

BACKEND_NAME = "cython"


cdef inline uint64_t _mix(uint64_t h) nogil:
    h ^= h >> 30
    h *= MIX1
    h ^= h >> 27
    h *= MIX2
    h ^= h >> 31
    return h


cdef inline uint64_t _hash4(uint64_t seed, uint64_t t, uint64_t node,
                            uint64_t purpose) nogil:
    cdef uint64_t h = _mix(seed ^ PHI)
    h = _mix(h ^ t)
    h = _mix(h ^ node)
    h = _mix(h ^ purpose)
    return h


cdef inline double _unit(uint64_t bits) nogil:
    return <double>(bits >> 11) * INV_2_53


def hash_u64(seed, t, node, purpose):
    """Scalar coordinate hash, exposed for parity tests against _rng."""
    return _hash4(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF), <uint64_t>t,
                  <uint64_t>node, <uint64_t>purpose)


def sis_step(adj_u8, const int64_t[::1] indptr, const int64_t[::1] indices,
             const uint8_t[::1] infected, const double[::1] pow_table,
             double delta, object seed, object t, bint allow_reinfection):
    """One synchronous SIS step; returns the next infected uint8 vector."""
    import numpy as np
    cdef uint64_t s = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t tt = <uint64_t>int(t)
    cdef Py_ssize_t n = infected.shape[0]
    out_arr = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int64_t j, m
    cdef double p_inf
    cdef bint stays, catches
    with nogil:
        for i in range(n):
            m = 0
            for j in range(indptr[i], indptr[i + 1]):
                m += infected[indices[j]]
            p_inf = 1.0 - pow_table[m]
            if infected[i]:
                stays = _unit(_hash4(s, tt, <uint64_t>i, RECOVERY)) >= delta
                if stays:
                    out[i] = 1
                elif allow_reinfection:
                    out[i] = _unit(_hash4(s, tt, <uint64_t>i, INFECTION)) < p_inf
                else:
                    out[i] = 0
            else:
                out[i] = _unit(_hash4(s, tt, <uint64_t>i, INFECTION)) < p_inf
    return out_arr
