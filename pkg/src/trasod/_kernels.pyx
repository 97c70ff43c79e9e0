# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled neighbor-count kernels.

Same contract as ``trasod._kernels_py``: for each point, count the other
owners with at least one point within ``max_dist``. Loops run without the
GIL so groups can be processed by a thread pool.
"""

import math

import numpy as np

cimport numpy as cnp

from trasod._cells import EXACT_ZERO, build_cell_table, cell_size_for, distance_test, run_ends

cnp.import_array()

cdef int EXACT_ZERO_C = EXACT_ZERO


cdef inline bint _within(double dx, double dy, int mode, double lo, double hi, double r) noexcept nogil:
    # mirrors _cells.within_mask
    cdef double d2
    cdef bint ok
    if mode == EXACT_ZERO_C:
        return dx == 0.0 and dy == 0.0
    d2 = dx * dx + dy * dy
    if d2 <= lo:
        return True
    if d2 > hi:
        return False
    with gil:
        ok = math.hypot(dx, dy) <= r
    return ok



def neighbor_counts_grid(xs, ys, owner, offsets, double max_dist):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ax = np.ascontiguousarray(xs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ay = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = ax.shape[0]
    cdef Py_ssize_t n_owners = max(len(offsets) - 1, 1)
    counts_arr = np.zeros(n, dtype=np.int32)
    if n == 0:
        return counts_arr
    own_arr = np.ascontiguousarray(owner, dtype=np.int64)
    table = build_cell_table(ax, ay, cell_size_for(max_dist, ax, ay), own_arr)
    order_arr = np.ascontiguousarray(table.order, dtype=np.int64)

    cdef const long long[::1] order = order_arr
    cdef const double[::1] sx = np.ascontiguousarray(ax[order_arr])
    cdef const double[::1] sy = np.ascontiguousarray(ay[order_arr])
    cdef const long long[::1] so = np.ascontiguousarray(own_arr[order_arr])
    cdef const long long[::1] run_end = run_ends(order_arr, table.starts, own_arr)
    cdef const long long[::1] starts = np.ascontiguousarray(table.starts, dtype=np.int64)
    cdef const long long[::1] ends = np.ascontiguousarray(table.ends, dtype=np.int64)
    cdef const long long[:, ::1] nbrs = np.ascontiguousarray(table.neighbors, dtype=np.int64)
    cdef int[::1] counts = counts_arr
    marker_arr = np.full(n_owners, -1, dtype=np.int64)
    cdef long long[::1] marker = marker_arr

    cdef Py_ssize_t n_cells = starts.shape[0]
    cdef Py_ssize_t cell, i, j, slot, nb
    cdef long long oi, oj
    cdef double px, py, dx, dy
    test = distance_test(max_dist)
    cdef int mode = test.mode
    cdef double lo = test.lo, hi = test.hi
    cdef int c
    with nogil:
        for cell in range(n_cells):
            for i in range(starts[cell], ends[cell]):
                px = sx[i]
                py = sy[i]
                oi = so[i]
                c = 0
                for slot in range(9):
                    nb = nbrs[cell, slot]
                    if nb < 0:
                        continue
                    j = starts[nb]
                    while j < ends[nb]:
                        oj = so[j]
                        if oj == oi or marker[oj] == i:
                            # nothing more to learn from this candidate here
                            j = run_end[j]
                            continue
                        dx = px - sx[j]
                        dy = py - sy[j]
                        if _within(dx, dy, mode, lo, hi, max_dist):
                            marker[oj] = i
                            c += 1
                            j = run_end[j]
                        else:
                            j += 1
                counts[order[i]] = c
    return counts_arr


def neighbor_counts_brute(xs, ys, owner, offsets, double max_dist):
    """Scan every other candidate's points, stopping at its first hit."""
    cdef const double[::1] px_arr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[::1] py_arr = np.ascontiguousarray(ys, dtype=np.float64)
    cdef const long long[::1] own = np.ascontiguousarray(owner, dtype=np.int64)
    cdef const long long[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t n = px_arr.shape[0]
    cdef Py_ssize_t k = off.shape[0] - 1
    counts_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] counts = counts_arr
    cdef Py_ssize_t i, j, o
    cdef double px, py, dx, dy
    test = distance_test(max_dist)
    cdef int mode = test.mode
    cdef double lo = test.lo, hi = test.hi
    cdef int c
    with nogil:
        for i in range(n):
            px = px_arr[i]
            py = py_arr[i]
            c = 0
            for o in range(k):
                if o == own[i]:
                    continue
                for j in range(off[o], off[o + 1]):
                    dx = px - px_arr[j]
                    dy = py - py_arr[j]
                    if _within(dx, dy, mode, lo, hi, max_dist):
                        c += 1
                        break
            counts[i] = c
    return counts_arr
