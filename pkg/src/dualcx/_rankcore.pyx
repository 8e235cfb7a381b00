# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense elimination kernel for exact integer rank.

Works on int64 with a conservative growth bound; returns -1 whenever an
entry might leave the safe range, in which case the caller recomputes
with the arbitrary-precision pure-Python path.
"""

import numpy as np

# Entries are kept within +-2^30 so that p*x - a*y stays below 2^62.
DEF LIMIT = 1073741824


def dense_rank(Py_ssize_t n_rows, Py_ssize_t n_cols, entries):
    """Rank of the integer matrix given as (row, col, value) triples.

    Returns -1 if entries would grow past the safe 64-bit window.
    """
    if n_rows <= 0 or n_cols <= 0:
        return 0
    m = np.zeros((n_rows, n_cols), dtype=np.int64)
    cdef long long[:, ::1] a = m
    cdef Py_ssize_t r, c
    cdef long long v
    for r_, c_, v_ in entries:
        r = r_
        c = c_
        v = v_
        if r < 0 or r >= n_rows or c < 0 or c >= n_cols:
            raise ValueError("entry outside matrix")
        a[r, c] += v
        if a[r, c] > LIMIT or a[r, c] < -LIMIT:
            return -1

    used = np.zeros(n_rows, dtype=np.uint8)
    cdef unsigned char[::1] used_v = used
    cdef Py_ssize_t rank = 0, col, row, pr, j
    cdef long long piv, val, f, nv

    for col in range(n_cols):
        pr = -1
        for row in range(n_rows):
            if used_v[row] or a[row, col] == 0:
                continue
            if a[row, col] == 1 or a[row, col] == -1:
                pr = row
                break
            if pr < 0:
                pr = row
        if pr < 0:
            continue
        used_v[pr] = 1
        rank += 1
        piv = a[pr, col]
        for row in range(n_rows):
            if used_v[row] or a[row, col] == 0:
                continue
            val = a[row, col]
            if val % piv == 0:
                f = val / piv
                for j in range(col, n_cols):
                    if a[pr, j] != 0:
                        nv = a[row, j] - f * a[pr, j]
                        if nv > LIMIT or nv < -LIMIT:
                            return -1
                        a[row, j] = nv
            else:
                for j in range(col, n_cols):
                    nv = piv * a[row, j] - val * a[pr, j]
                    if nv > LIMIT or nv < -LIMIT:
                        return -1
                    a[row, j] = nv
    return rank
