"""Pure-Python exact rank of sparse integer matrices.

Fraction-free row elimination over arbitrary-precision integers: rows
with a unit pivot entry are eliminated by plain subtraction, other rows
by cross-multiplication followed by a gcd reduction to keep entries
small.  Pivots are chosen deterministically, scanning columns left to
right and preferring unit entries (lowest row index breaks ties).
"""

from __future__ import annotations

from math import gcd
from typing import Iterable


def rank_from_entries(
    n_rows: int, n_cols: int, entries: Iterable[tuple[int, int, int]]
) -> int:
    rows: dict[int, dict[int, int]] = {}
    for r, c, v in entries:
        if not (0 <= r < n_rows and 0 <= c < n_cols):
            raise ValueError(f"entry ({r},{c}) outside {n_rows}x{n_cols}")
        if v == 0:
            continue
        row = rows.setdefault(r, {})
        nv = row.get(c, 0) + v
        if nv:
            row[c] = nv
        else:
            del row[c]

    occupancy: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            occupancy.setdefault(c, set()).add(r)

    rank = 0
    for col in range(n_cols):
        holders = occupancy.get(col)
        if not holders:
            continue
        pivot_row = min(holders, key=lambda r: (abs(rows[r][col]) != 1, r))
        rank += 1
        prow = rows.pop(pivot_row)
        p = prow[col]
        for c in prow:
            occupancy[c].discard(pivot_row)
        for r in list(occupancy.get(col, ())):
            row = rows[r]
            a = row[col]
            if a % p == 0:
                _add_multiple(row, prow, -(a // p), occupancy, r)
            else:
                for c in list(row):
                    row[c] *= p
                _add_multiple(row, prow, -a, occupancy, r)
                _reduce_gcd(row)
        occupancy.pop(col, None)
    return rank


def _add_multiple(
    row: dict[int, int],
    other: dict[int, int],
    factor: int,
    occupancy: dict[int, set[int]],
    r: int,
) -> None:
    for c, w in other.items():
        nv = row.get(c, 0) + factor * w
        if nv:
            row[c] = nv
            occupancy.setdefault(c, set()).add(r)
        elif c in row:
            del row[c]
            occupancy[c].discard(r)


def _reduce_gcd(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g
