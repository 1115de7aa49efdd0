"""Backend selection: compiled kernel if importable, numpy fallback otherwise.

Set EPISWITCH_BACKEND=python (or =cython) to force a backend; forcing cython
when the extension is missing raises at import time rather than silently
degrading.
"""

import os

from . import _reference

_requested = os.environ.get("EPISWITCH_BACKEND", "").strip().lower()

_compiled = None
if _requested != "python":
    try:
        from . import _siskern as _compiled
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "EPISWITCH_BACKEND=cython but the compiled kernel is not built")
        _compiled = None

_active = _compiled if _compiled is not None else _reference

BACKEND = _active.BACKEND_NAME
HAVE_COMPILED = _compiled is not None


def sis_step(adj_u8, indptr, indices, infected_u8, pow_table, delta, seed, t,
             allow_reinfection):
    """One synchronous SIS step on the active backend."""
    return _active.sis_step(adj_u8, indptr, indices, infected_u8, pow_table,
                            delta, seed, t, allow_reinfection)


def backends():
    """Mapping of available backend name -> module (for parity tests/benchmarks)."""
    out = {"python": _reference}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
