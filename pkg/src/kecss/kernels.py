"""Kernel selection: compiled extension when importable, else pure Python.

Set ``KECSS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_c = None
if os.environ.get("KECSS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
        BACKEND = "cython"
    except ImportError:
        _c = None

# Largest total capacity handed to the C max-flow (sums stay inside int64).
_C_CAP_LIMIT = 1 << 62

pivot = _c.pivot if _c is not None else _pykernels.pivot


def max_flow(n, tails, heads, caps, source_mask, sink_mask):
    if _c is not None and sum(caps) < _C_CAP_LIMIT:
        return _c.max_flow(n, tails, heads, caps, source_mask, sink_mask)
    return _pykernels.max_flow(n, tails, heads, caps, source_mask, sink_mask)


def backends():
    """Available (name, module) pairs, for tests and benchmarks."""
    out = [("python", _pykernels)]
    try:
        from . import _ckernels
        out.append(("cython", _ckernels))
    except ImportError:
        pass
    return out
