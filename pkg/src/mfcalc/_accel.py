"""Optional numba acceleration.

Set ``MF_DISABLE_NUMBA=1`` to force the pure-numpy code paths.  The flag is
read once at import time; ``use_numba()`` reports the active mode.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("MF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

# the TBB layer shipped in some images is too old; workqueue is always available
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit, prange  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised when numba is off
    HAVE_NUMBA = False
    prange = range


def use_numba() -> bool:
    return HAVE_NUMBA


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(fn):
        return fn

    return wrap
