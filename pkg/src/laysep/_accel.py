"""Backend switch for the compiled kernels.

Set ``LAYSEP_DISABLE_NUMBA=1`` before importing :mod:`laysep` to run every
kernel through its numpy/Python reference path instead of numba.
"""

from __future__ import annotations

import os

_FLAG = "LAYSEP_DISABLE_NUMBA"


def _numba_wanted() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _numba_wanted()


def njit(func):
    """Compile ``func`` in nopython mode when numba is importable.

    Compilation is lazy, so importing this module is cheap even when the
    numpy backend is selected.
    """
    if _numba is None:  # pragma: no cover
        return func
    return _numba.njit(cache=True)(func)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
