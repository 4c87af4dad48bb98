"""Kernel backend selection.

The compiled Cython extension is preferred when it imported successfully;
otherwise the NumPy fallback is used. Selection happens once at import time
and can be forced with the environment variable ``TAILASYM_BACKEND``
(``compiled`` or ``python``). Counting/ranking kernels produce bit-identical
results across backends; root-finding agrees to the solver tolerance.
"""

import os

from . import _fallback

_COMPILED = None
try:
    from . import _core as _COMPILED  # type: ignore[attr-defined]
except ImportError:
    _COMPILED = None


def available_backends():
    out = {"python": _fallback}
    if _COMPILED is not None:
        out["compiled"] = _COMPILED
    return out


def get_backend(name: str):
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"kernel backend {name!r} not available; have {sorted(backends)}")
    return backends[name]


_forced = os.environ.get("TAILASYM_BACKEND", "").strip().lower()
if _forced:
    _impl = get_backend(_forced)
elif _COMPILED is not None:
    _impl = _COMPILED
else:
    _impl = _fallback

BACKEND = _impl.BACKEND_NAME

corner_counts = _impl.corner_counts
rank_counts = _impl.rank_counts
pseudo_corner_counts = _impl.pseudo_corner_counts
cond_inverse_gumbel = _impl.cond_inverse_gumbel
cond_inverse_bb7 = _impl.cond_inverse_bb7
