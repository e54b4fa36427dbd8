"""Numba-jitted twins of the kernels in numpy_impl.

Same float64 expressions and the same tie-breaking as the numpy path, so
both backends return bit-identical results (enforced by tests).
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def tree_apply(x, feature, threshold, left, right, leaf_class):
    n = x.shape[0]
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if x[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = leaf_class[node]
    return out


@njit(cache=True, nogil=True)
def split_scan(x, y, min_leaf):
    n = x.shape[0]
    c1p = 0
    for i in range(n):
        c1p += y[i]
    c0p = n - c1p
    p0 = c0p / n
    p1 = c1p / n
    g_parent = 1.0 - (p0 * p0 + p1 * p1)

    best_feature = -1
    best_threshold = 0.0
    best_decrease = -1.0
    for j in range(x.shape[1]):
        col = np.ascontiguousarray(x[:, j])
        order = np.argsort(col)
        c1l = 0
        for b in range(n - 1):
            c1l += y[order[b]]
            v1 = col[order[b]]
            v2 = col[order[b + 1]]
            if v1 == v2:
                continue
            nl = b + 1
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            c0l = nl - c1l
            c0r = c0p - c0l
            c1r = c1p - c1l
            pl0 = c0l / nl
            pl1 = c1l / nl
            gl = 1.0 - (pl0 * pl0 + pl1 * pl1)
            pr0 = c0r / nr
            pr1 = c1r / nr
            gr = 1.0 - (pr0 * pr0 + pr1 * pr1)
            dec = g_parent - (nl / n) * gl - (nr / n) * gr
            if dec > best_decrease:
                best_feature = j
                best_threshold = (v1 + v2) * 0.5
                best_decrease = dec
    return best_feature, best_threshold, best_decrease


@njit(cache=True, nogil=True)
def points_in_ring(px, py, rx, ry):
    n = px.shape[0]
    m = rx.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        x0 = px[i]
        y0 = py[i]
        inside = False
        for e in range(m - 1):
            y1 = ry[e]
            y2 = ry[e + 1]
            if y1 == y2:
                continue
            if (y1 < y0) != (y2 < y0):
                t = (y0 - y1) / (y2 - y1)
                xi = rx[e] + t * (rx[e + 1] - rx[e])
                if x0 < xi:
                    inside = not inside
        out[i] = inside
    return out
