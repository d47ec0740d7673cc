"""Pure numpy version of the adjacency kernel."""
from __future__ import annotations

import numpy as np


def adjacent_pairs(Z: np.ndarray, pos: np.ndarray, neg: np.ndarray, min_common: int, n_threads: int = 0):
    """Pairs (pos[a], neg[b]) of adjacent rays, in row-major (a, b) order.

    ``Z`` holds one zero-set bitset per ray (uint64 words). Two rays are
    adjacent iff their common zero set has at least ``min_common`` members
    and no third ray's zero set contains it. ``n_threads`` is accepted for
    signature parity and ignored.
    """
    pos = np.asarray(pos, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int64)
    if not pos.size or not neg.size:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    common = Z[pos][:, None, :] & Z[neg][None, :, :]
    counts = np.bitwise_count(common).sum(axis=2, dtype=np.int64)
    a_idx, b_idx = np.nonzero(counts >= min_common)
    keep = np.zeros(a_idx.size, dtype=bool)
    for t, (a, b) in enumerate(zip(a_idx, b_idx)):
        c = common[a, b]
        # p and q themselves always contain c
        keep[t] = int(np.all((Z & c) == c, axis=1).sum()) == 2
    return pos[a_idx[keep]], neg[b_idx[keep]]
