"""Double description method for pointed polyhedral cones.

The cone is ``{y : M y >= 0}`` for an integer matrix ``M`` of full column
rank. Rays are kept as primitive integer vectors, so no rational
arithmetic is needed after the initial basis inversion. Adjacency is the
combinatorial test on zero sets, run by the kernel in ``mubwigner._kernels``.

Insertion order matters a great deal on degenerate inputs. The default
``"mincut"`` inserts next the row that cuts off the fewest current rays;
``"maxcut"`` (the row cutting the most rays) and ``"index"`` are kept for
comparison.
"""
from __future__ import annotations

import hashlib
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .. import _kernels
from ..errors import ResourceLimitError
from .linalg import inverse, mod_row_basis, rref
from .rational import lcm, primitive

ORDERS = ("mincut", "maxcut", "index")
_SAFE = 2 ** 62


@dataclass
class DDStats:
    rows: int
    dim: int
    order: str
    kernel: str
    inserted: int = 0
    max_rays: int = 0
    exact_fallback: bool = False
    resumed: bool = False
    elapsed: float = 0.0
    history: list = field(default_factory=list)  # ray count after each insertion

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "dim": self.dim,
            "order": self.order,
            "kernel": self.kernel,
            "inserted": self.inserted,
            "max_rays": self.max_rays,
            "exact_fallback": self.exact_fallback,
            "resumed": self.resumed,
            "elapsed": self.elapsed,
        }


def _as_int_matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.dtype != object:
        return M.astype(np.int64)
    if M.size and max(abs(int(x)) for x in M.flat) < 2 ** 31:
        return M.astype(np.int64)
    return M


def _fingerprint(M: np.ndarray) -> str:
    h = hashlib.sha256(str(M.shape).encode())
    h.update(",".join(str(int(x)) for x in M.flat).encode())
    return h.hexdigest()


def _amax(X: np.ndarray) -> int:
    if not X.size:
        return 0
    if X.dtype == object:
        return max(abs(int(x)) for x in X.flat)
    return int(np.abs(X).max())


class _State:
    """Ray storage in reusable slots.

    ``R`` holds rays, ``S = R M^T`` their slacks (one row per slot), ``Z``
    zero-set bitsets over inserted rows; ``alive`` marks occupied slots.
    ``negc[i]`` counts live rays with negative slack on row ``i``.
    ``r_bound`` and ``s_bound`` bound the magnitudes of ``R`` and ``S`` for
    the overflow guard.
    """

    def __init__(self, M, R, Z, inserted):
        self.M = M
        self.inserted = inserted
        self.exact = R.dtype == object or M.dtype == object
        if self.exact:
            R = R.astype(object)
        S = self._product(M, R)
        if S.dtype == object:
            self.exact = True
            R = R.astype(object)
        n = len(R)
        self.R, self.S, self.Z = R, S, Z
        self.alive = np.ones(n, dtype=bool)
        self.negc = (S < 0).sum(axis=0).astype(np.int64)
        self.r_bound = _amax(R)
        self.s_bound = _amax(S)

    @staticmethod
    def _product(M, R):
        if M.dtype != object and R.dtype != object and _amax(M) * _amax(R) * max(1, M.shape[1]) < _SAFE:
            return R @ M.T
        return R.astype(object).dot(M.astype(object).T)

    def __len__(self):
        return int(self.alive.sum())

    def to_object(self):
        self.exact = True
        self.R = self.R.astype(object)
        self.S = self.S.astype(object)

    def live(self):
        return np.nonzero(self.alive)[0]

    def compact(self):
        idx = self.live()
        return self.R[idx], self.Z[idx]

    def free_slots(self, k: int) -> np.ndarray:
        free = np.nonzero(~self.alive)[0]
        if free.size < k:
            grow = max(k - free.size, len(self.alive))
            self.R = np.concatenate([self.R, np.zeros((grow, self.R.shape[1]), dtype=self.R.dtype)])
            self.S = np.concatenate([self.S, np.zeros((grow, self.S.shape[1]), dtype=self.S.dtype)])
            self.Z = np.concatenate([self.Z, np.zeros((grow, self.Z.shape[1]), dtype=self.Z.dtype)])
            self.alive = np.concatenate([self.alive, np.zeros(grow, dtype=bool)])
            free = np.nonzero(~self.alive)[0]
        return free[:k]


def _initial_state(M: np.ndarray) -> _State:
    m, D = M.shape
    basis = mod_row_basis(M)
    if len(basis) < D:
        # the modular rank can undercount; confirm over Q
        _, pivots = rref(M.tolist(), D)
        if len(pivots) < D:
            raise ValueError("cone is not pointed (constraint matrix lacks full column rank)")
        basis = _exact_row_basis(M)
    Binv = inverse([[Fraction(int(x)) for x in M[i]] for i in basis])
    rays = []
    for c in range(D):
        col = [Binv[r][c] for r in range(D)]
        den = reduce(lcm, (x.denominator for x in col), 1)
        rays.append(primitive([int(x * den) for x in col]))
    R = np.array(rays, dtype=object)
    if _amax(R) < 2 ** 31:
        R = R.astype(np.int64)
    words = (m + 63) // 64
    Z = np.zeros((D, words), dtype=np.uint64)
    for c in range(D):
        for k, i in enumerate(basis):
            if k != c:
                Z[c, i // 64] |= np.uint64(1) << np.uint64(i % 64)
    inserted = np.zeros(m, dtype=bool)
    inserted[basis] = True
    return _State(M, R, Z, inserted)


def _exact_row_basis(M: np.ndarray) -> list:
    chosen, rows = [], []
    for i in range(M.shape[0]):
        trial = rows + [list(M[i])]
        if len(rref(trial, M.shape[1])[1]) == len(trial):
            rows = trial
            chosen.append(i)
            if len(chosen) == M.shape[1]:
                break
    return chosen


def _save(path, state: _State, fp: str, stats: DDStats):
    R, Z = state.compact()
    payload = {
        "fingerprint": np.array(fp),
        "Z": Z,
        "inserted": state.inserted,
        "inserted_count": np.array(stats.inserted),
        "max_rays": np.array(stats.max_rays),
    }
    if R.dtype == object:
        payload["R_text"] = np.array([" ".join(str(int(x)) for x in row) for row in R])
    else:
        payload["R"] = R
    tmp = str(path) + ".tmp.npz"
    np.savez(tmp, **payload)
    os.replace(tmp, path)


def _load(path, M: np.ndarray, fp: str):
    with np.load(path, allow_pickle=False) as data:
        if str(data["fingerprint"]) != fp:
            raise ValueError(f"checkpoint {path} belongs to a different constraint system")
        if "R" in data:
            R = data["R"]
        else:
            R = np.array([[int(t) for t in s.split()] for s in data["R_text"]], dtype=object)
        state = _State(M, R, data["Z"].copy(), data["inserted"].copy())
        return state, int(data["inserted_count"]), int(data["max_rays"])


def _choose_row(state: _State, order: str):
    negc = np.where(state.inserted, 0, state.negc)
    cand = np.nonzero(negc)[0]
    if not cand.size:
        return None
    if order == "mincut":
        k = cand[np.argmin(negc[cand])]
    elif order == "maxcut":
        k = cand[np.argmax(negc[cand])]
    else:
        k = cand[0]
    return int(k)


def _insert(state: _State, i: int, D: int, n_threads: int) -> None:
    live = state.live()
    v = state.S[live, i]
    pos = np.nonzero(v > 0)[0].astype(np.int64)
    neg = np.nonzero(v < 0)[0].astype(np.int64)
    zer = live[v == 0]
    word, bit = i // 64, np.uint64(1) << np.uint64(i % 64)
    Zc = np.ascontiguousarray(state.Z[live])
    P, Q = _kernels.adjacent_pairs(Zc, pos, neg, D - 2, n_threads)
    P, Q = live[P], live[Q]
    neg_slots = live[neg]

    if P.size:
        vp = state.S[P, i][:, None]
        vq = state.S[Q, i][:, None]
        if not state.exact and 2 * max(_amax(vp), _amax(vq)) * max(state.r_bound, state.s_bound) >= _SAFE:
            state.to_object()
            vp, vq = vp.astype(object), vq.astype(object)
        newR = vp * state.R[Q] - vq * state.R[P]
        newS = vp * state.S[Q] - vq * state.S[P]
        g = np.gcd.reduce(newR, axis=1)
        g = np.where(g == 0, 1, g)
        if np.any(g != 1):
            newR = newR // g[:, None]
            newS = newS // g[:, None]
        state.r_bound = max(state.r_bound, _amax(newR))
        state.s_bound = max(state.s_bound, _amax(newS))
        newZ = state.Z[P] & state.Z[Q]
        newZ[:, word] |= bit

    # retire the cut-off rays, then fill free slots with the new ones
    if neg_slots.size:
        state.negc -= (state.S[neg_slots] < 0).sum(axis=0)
        state.alive[neg_slots] = False
    state.Z[zer, word] |= bit
    if P.size:
        slots = state.free_slots(len(P))
        state.R[slots] = newR
        state.S[slots] = newS
        state.Z[slots] = newZ
        state.alive[slots] = True
        state.negc += (newS < 0).sum(axis=0)
    state.inserted[i] = True


def cone_extreme_rays(
    M,
    order: str = "mincut",
    max_rays: int | None = None,
    time_limit: float | None = None,
    checkpoint=None,
    checkpoint_every: float = 300.0,
    n_threads: int = 0,
    progress=None,
):
    """Extreme rays of the pointed cone ``{y : M y >= 0}``.

    Parameters
    ----------
    M : array_like of int
        Constraint rows; must have full column rank.
    order : {"mincut", "maxcut", "index"}
        Insertion order.
    max_rays, time_limit : optional
        Resource caps. Exceeding either raises ``ResourceLimitError`` after
        writing the checkpoint (when a path is given).
    checkpoint : path, optional
        ``.npz`` file. An existing file for the same ``M`` is resumed.
    n_threads : int
        Threads for the compiled adjacency kernel (0 = OpenMP default).
    progress : callable, optional
        Called with a dict after each insertion.

    Returns
    -------
    rays : list of tuple of int
        Primitive integer rays, sorted.
    stats : DDStats
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    M = _as_int_matrix(M)
    m, D = M.shape
    stats = DDStats(rows=m, dim=D, order=order, kernel=_kernels.BACKEND)
    t0 = time.perf_counter()
    fp = _fingerprint(M) if checkpoint is not None else ""
    if checkpoint is not None and os.path.exists(checkpoint):
        state, stats.inserted, stats.max_rays = _load(checkpoint, M, fp)
        stats.resumed = True
    else:
        state = _initial_state(M)
        stats.max_rays = len(state)
    last_save = time.perf_counter()

    while True:
        i = _choose_row(state, order)
        if i is None:
            break
        _insert(state, i, D, n_threads)
        stats.inserted += 1
        n_rays = len(state)
        stats.max_rays = max(stats.max_rays, n_rays)
        stats.history.append(n_rays)
        stats.exact_fallback = state.exact
        if progress is not None:
            progress({"inserted": stats.inserted, "row": i, "rays": n_rays})
        elapsed = time.perf_counter() - t0
        over_rays = max_rays is not None and n_rays > max_rays
        over_time = time_limit is not None and elapsed > time_limit
        if checkpoint is not None and (over_rays or over_time or time.perf_counter() - last_save > checkpoint_every):
            _save(checkpoint, state, fp, stats)
            last_save = time.perf_counter()
        if over_rays or over_time:
            what = "ray count" if over_rays else "time limit"
            raise ResourceLimitError(
                f"double description stopped: {what} exceeded",
                checkpoint=str(checkpoint) if checkpoint is not None else None,
                progress={"inserted": stats.inserted, "rays": n_rays, "rows": m, "elapsed": elapsed},
            )

    stats.elapsed = time.perf_counter() - t0
    rays = sorted(tuple(int(x) for x in row) for row in state.compact()[0])
    return rays, stats
