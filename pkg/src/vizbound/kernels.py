"""Backend selection for the domination kernels.

The compiled ``_kernels`` extension is used when it imported cleanly and the
graph fits in one 64-bit word; everything else goes through ``_kernels_py``.
Set ``VIZBOUND_PURE_PYTHON=1`` to force the Python backend.
"""

import os

from vizbound import _kernels_py
from vizbound._kernels_py import SearchTimeout

try:
    if os.environ.get("VIZBOUND_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend forced by environment")
    from vizbound import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernels_py.BACKEND

__all__ = [
    "BACKEND",
    "SearchTimeout",
    "backend_for",
    "is_dominating",
    "min_dominating_set",
    "dominating_sets_of_size",
    "greedy_dominating_set",
]


def backend_for(n: int, prefer: str | None = None):
    if prefer == "python" or _compiled is None or n > _compiled.MAX_N:
        return _kernels_py
    return _compiled


def is_dominating(closed: list[int], n: int, mask: int, prefer: str | None = None) -> bool:
    return backend_for(n, prefer).is_dominating(closed, n, mask)


def greedy_dominating_set(closed: list[int], n: int, prefer: str | None = None) -> int:
    return backend_for(n, prefer).greedy_dominating_set(closed, n)


def min_dominating_set(closed: list[int], n: int, deadline: float | None = None, prefer: str | None = None):
    return backend_for(n, prefer).min_dominating_set(closed, n, deadline)


def dominating_sets_of_size(closed: list[int], n: int, k: int, prefer: str | None = None) -> list[int]:
    return backend_for(n, prefer).dominating_sets_of_size(closed, n, k)
