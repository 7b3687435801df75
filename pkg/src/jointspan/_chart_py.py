"""Pure-Python chart kernel; the reference the compiled kernel must match bit for bit.

Tables are flat lists.  For 0-based ``lo <= hi`` and head ``h``,
``cell = (lo * n + hi) * n + h``.  ``span_best[lo * n + hi]`` is the best
label score of the span and ``arcs[head * n + dep]`` scores head token
``head`` (0 = root) over dependent token ``dep + 1``.
"""
from math import inf


def chart_decode(n, span_best, arcs, lam):
    """Return ``(total, root, split, other)``.

    ``split[cell]`` is the last token of the left child and ``other[cell]``
    the head of the non-head child, both 0-based.
    """
    w = 1.0 - lam
    size = n * n * n
    best = [-inf] * size
    split = [-1] * size
    other = [-1] * size
    for i in range(n):
        best[(i * n + i) * n + i] = lam * span_best[i * n + i]
    for length in range(1, n):
        for i in range(n - length):
            j = i + length
            st = lam * span_best[i * n + j]
            base = (i * n + j) * n
            for h in range(i, j + 1):
                arc_row = (h + 1) * n
                bv = -inf
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
    total = -inf
    root = -1
    top = (n - 1) * n
    for h in range(n):
        cand = best[top + h] + w * arcs[h]
        if cand > total:
            total = cand
            root = h
    return total, root, split, other
