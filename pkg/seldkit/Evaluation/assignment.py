"""Minimum-cost bipartite assignment for small cost matrices."""
import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

EXHAUSTIVE_LIMIT = 6


def _exhaustive(cost):
    n_rows, n_cols = cost.shape
    transposed = n_rows > n_cols
    if transposed:
        cost = cost.T
        n_rows, n_cols = n_cols, n_rows
    rows = np.arange(n_rows)
    best_total, best_cols = None, None
    for cols in itertools.permutations(range(n_cols), n_rows):
        total = cost[rows, list(cols)].sum()
        if best_total is None or total < best_total:
            best_total, best_cols = total, cols
    pairs = list(zip(rows.tolist(), best_cols))
    if transposed:
        pairs = [(j, i) for i, j in pairs]
    return sorted(pairs)


def minimum_assignment(cost):
    """Pairs (row, col) matching min(rows, cols) items at minimal total cost.

    Matrices up to 6 x 6 are solved by enumerating every assignment; larger
    ones use the Hungarian method from scipy.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.size == 0:
        return []
    if max(cost.shape) <= EXHAUSTIVE_LIMIT:
        return _exhaustive(cost)
    rows, cols = linear_sum_assignment(cost)
    return sorted(zip(rows.tolist(), cols.tolist()))
