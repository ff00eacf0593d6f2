"""Backend selection for the character-sum kernel.

The compiled extension is used when it was built and ``K3I19_PURE_PYTHON``
is unset; otherwise the pure-Python kernel is used.  Both produce identical
integers.
"""
from __future__ import annotations

import os

from . import _pykernel

python_char_sum = _pykernel.char_sum

try:
    if os.environ.get("K3I19_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from ._ckernel import char_sum as compiled_char_sum
except ImportError:
    compiled_char_sum = None

if compiled_char_sum is not None:
    char_sum = compiled_char_sum
    BACKEND = "cython"
else:
    char_sum = python_char_sum
    BACKEND = "python"


def get(backend: str | None = None):
    if backend is None:
        return char_sum
    if backend == "python":
        return python_char_sum
    if backend == "cython":
        if compiled_char_sum is None:
            raise RuntimeError("compiled kernel is not available")
        return compiled_char_sum
    raise ValueError(f"unknown backend {backend!r}")
