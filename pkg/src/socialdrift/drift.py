"""Predicting the drift of the global state sum.

Summing the social update over all nodes gives

    sum(s') - sum(s) = c * v . s,   v_i = sum_{j in N_i} 1/k_j - 1,

exactly, for any graph and state. ``v_i`` is positive for a node that is
better connected than its neighbours, so the global sum rises whenever
high states sit on such nodes. Isolated nodes get ``v_i = 0``, matching the
held-state rule in :mod:`socialdrift.dynamics`.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, check_vector


def drift_vector(g: Graph) -> np.ndarray:
    k = g.degree
    has = k > 0
    inv = np.zeros(g.n)
    inv[has] = 1.0 / k[has]
    u, w = g.edge_arrays()
    # float64 even with no edges, where bincount would return int64
    v = np.bincount(u, weights=inv[w], minlength=g.n) + np.bincount(
        w, weights=inv[u], minlength=g.n
    ).astype(np.float64)
    v[has] -= 1.0
    return v


def drift_rate(g: Graph, s, c: float) -> float:
    """Instantaneous change of the global sum, ``c * v . s``."""
    s = check_vector(g, s, "state")
    return c * float(drift_vector(g) @ s)


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation, 0.0 if either input is (numerically) constant."""
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    # round-off on a constant vector leaves ~1e-16 residue, not zero
    floor = (1e-12 * max(1.0, float(np.abs(x).max()))) ** 2 * len(x)
    floor_y = (1e-12 * max(1.0, float(np.abs(y).max()))) ** 2 * len(y)
    if sxx <= floor or syy <= floor_y:
        return 0.0
    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def state_degree_correlation(g: Graph, s) -> float:
    s = check_vector(g, s, "state")
    return pearson(drift_vector(g), s)
