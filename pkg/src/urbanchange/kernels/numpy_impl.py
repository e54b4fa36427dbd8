"""Pure-numpy implementations of the hot kernels.

This is the fallback path selected by URBANCHANGE_NO_NUMBA=1 (or when numba
is not importable). The numba twins in numba_impl must stay interchangeable
bit for bit: identical float64 expressions, identical tie-breaking, so the
pipeline produces the same bytes on either backend.
"""

import numpy as np


def tree_apply(x, feature, threshold, left, right, leaf_class):
    """Route every row of x through a flattened tree; return class codes.

    feature[i] < 0 marks node i as a leaf holding leaf_class[i]; rows go
    left iff value <= threshold. Routing uses exact comparisons, so the
    result is independent of evaluation order.
    """
    n = x.shape[0]
    node = np.zeros(n, dtype=np.int64)
    pending = np.nonzero(feature[node] >= 0)[0]
    while pending.size:
        cur = node[pending]
        vals = x[pending, feature[cur]]
        node[pending] = np.where(vals <= threshold[cur], left[cur], right[cur])
        pending = pending[feature[node[pending]] >= 0]
    return leaf_class[node]


def split_scan(x, y, min_leaf):
    """Best Gini split over all (feature, midpoint) candidates.

    x is (n, features) float64, y is (n,) int64 with values 0/1. Candidate
    thresholds are midpoints between consecutive distinct sorted values.
    Ties resolve to the lowest feature index, then the smallest threshold.
    Returns (feature, threshold, decrease); feature == -1 means no candidate
    satisfied min_leaf on both sides.
    """
    n = x.shape[0]
    c1p = int(y.sum())
    c0p = n - c1p
    p0 = c0p / n
    p1 = c1p / n
    g_parent = 1.0 - (p0 * p0 + p1 * p1)

    best_feature = -1
    best_threshold = 0.0
    best_decrease = -1.0
    for j in range(x.shape[1]):
        col = x[:, j]
        order = np.argsort(col)
        v = col[order]
        lab = y[order]

        nl_all = np.arange(1, n, dtype=np.int64)
        cand = (v[:-1] != v[1:]) & (nl_all >= min_leaf) & ((n - nl_all) >= min_leaf)
        if not cand.any():
            continue

        c1l_all = np.cumsum(lab)[:-1]
        nl = nl_all[cand]
        c1l = c1l_all[cand]
        nr = n - nl
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

        k = int(np.argmax(dec))  # first max: smallest threshold wins the tie
        if dec[k] > best_decrease:
            i = int(np.nonzero(cand)[0][k])
            best_feature = j
            best_threshold = (v[i] + v[i + 1]) * 0.5
            best_decrease = float(dec[k])
    return best_feature, best_threshold, best_decrease


def points_in_ring(px, py, rx, ry):
    """Even-odd test of points against a closed ring.

    Boundary convention (half-open): a point exactly on an edge counts as
    inside when the edge is on the max-y or min-x side of the interior, so
    rings tiling the plane claim each point exactly once.
    """
    inside = np.zeros(px.shape[0], dtype=np.bool_)
    for e in range(rx.shape[0] - 1):
        x1, y1 = rx[e], ry[e]
        x2, y2 = rx[e + 1], ry[e + 1]
        if y1 == y2:
            continue
        crosses = (y1 < py) != (y2 < py)
        t = (py - y1) / (y2 - y1)
        xi = x1 + t * (x2 - x1)
        inside ^= crosses & (px < xi)
    return inside
