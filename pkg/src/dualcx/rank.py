"""Exact integer matrix rank with backend selection.

A compiled dense kernel handles the common case (moderate size, small
entries); everything else falls back to the arbitrary-precision pure
implementation.  Both backends compute the same deterministic
elimination, so results never depend on which one ran.

Set ``DUALCX_PURE=1`` to force the pure path.
"""

from __future__ import annotations

import os
from typing import Iterable

from . import _rankpure

try:
    from . import _rankcore
except ImportError:  # extension not built
    _rankcore = None

# Boundary matrices carry only dim+1 entries per column, so past about
# a million cells they are sparse enough that the pure elimination wins;
# below that the dense kernel is 2-20x faster (see benchmarks/).
_DENSE_CELL_LIMIT = 1_000_000


def compiled_available() -> bool:
    return _rankcore is not None


def active_backend() -> str:
    if _rankcore is not None and not os.environ.get("DUALCX_PURE"):
        return "compiled"
    return "pure"


def matrix_rank(
    n_rows: int, n_cols: int, entries: Iterable[tuple[int, int, int]]
) -> int:
    """Rank of the matrix given as (row, col, value) triples."""
    entries = list(entries)
    if (
        active_backend() == "compiled"
        and 0 < n_rows * n_cols <= _DENSE_CELL_LIMIT
    ):
        result = _rankcore.dense_rank(n_rows, n_cols, entries)
        if result >= 0:
            return result
    return _rankpure.rank_from_entries(n_rows, n_cols, entries)
