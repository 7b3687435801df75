# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled chart kernel; same recurrence and operation order as ``_chart_py``."""
from cpython.array cimport array, clone
from libc.math cimport INFINITY


def chart_decode(Py_ssize_t n, const double[::1] span_best, const double[::1] arcs,
                 double lam):
    cdef Py_ssize_t size = n * n * n
    cdef array dtemplate = array("d")
    cdef array itemplate = array("q")
    cdef array best_a = clone(dtemplate, size, False)
    cdef array split_a = clone(itemplate, size, False)
    cdef array other_a = clone(itemplate, size, False)
    cdef double[::1] best = best_a
    cdef long long[::1] split = split_a
    cdef long long[::1] other = other_a
    cdef double w = 1.0 - lam
    cdef double st, hv, cand, bv, total
    cdef Py_ssize_t i, j, h, k, o, length, base, arc_row, obase, top, root
    cdef long long bk, bo
    for i in range(size):
        best[i] = -INFINITY
        split[i] = -1
        other[i] = -1
    for i in range(n):
        best[(i * n + i) * n + i] = lam * span_best[i * n + i]
    for length in range(1, n):
        for i in range(n - length):
            j = i + length
            st = lam * span_best[i * n + j]
            base = (i * n + j) * n
            for h in range(i, j + 1):
                arc_row = (h + 1) * n
                bv = -INFINITY
                bk = -1
                bo = -1
                for k in range(i, j):
                    if h <= k:
                        hv = best[(i * n + k) * n + h]
                        obase = ((k + 1) * n + j) * n
                        for o in range(k + 1, j + 1):
                            cand = st + (hv + (best[obase + o] + w * arcs[arc_row + o]))
                            if cand > bv:
                                bv = cand
                                bk = k
                                bo = o
                    else:
                        hv = best[((k + 1) * n + j) * n + h]
                        obase = (i * n + k) * n
                        for o in range(i, k + 1):
                            cand = st + (hv + (best[obase + o] + w * arcs[arc_row + o]))
                            if cand > bv:
                                bv = cand
                                bk = k
                                bo = o
                best[base + h] = bv
                split[base + h] = bk
                other[base + h] = bo
    total = -INFINITY
    root = -1
    top = (n - 1) * n
    for h in range(n):
        cand = best[top + h] + w * arcs[h]
        if cand > total:
            total = cand
            root = h
    return total, root, split_a, other_a
