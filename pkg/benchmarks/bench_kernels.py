"""Compare the compiled and the numpy adjacency kernels.

Two measurements: the raw kernel on random zero-set bitsets, and a full
double description run on C_d with each kernel swapped in. Run with::

    python benchmarks/bench_kernels.py [--d5] [--repeat 3] [--json out.json]
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from mubwigner import _kernels
from mubwigner._kernels import _pykernels
from mubwigner.cd import build_cd_inequalities, conjectured_vertices
from mubwigner.polytope.dd import cone_extreme_rays

try:
    from mubwigner._kernels import _ckernels
except ImportError:
    _ckernels = None


def _bitsets(rng, n, nbits, density):
    B = rng.random((n, nbits)) < density
    Z = np.zeros((n, (nbits + 63) // 64), dtype=np.uint64)
    for k in range(nbits):
        Z[B[:, k], k // 64] |= np.uint64(1) << np.uint64(k % 64)
    return Z


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_raw(repeat, threads):
    rng = np.random.default_rng(0)
    rows = []
    for n, nbits in [(300, 80), (800, 160), (1600, 300)]:
        Z = _bitsets(rng, n, nbits, 0.7)
        perm = rng.permutation(n)
        pos, neg = np.sort(perm[: n // 2]).astype(np.int64), np.sort(perm[n // 2:]).astype(np.int64)
        # above the mean overlap (0.49 nbits), so only some pairs reach the subset test
        k = int(nbits * 0.55)
        t_py, (P, _) = _best(lambda: _pykernels.adjacent_pairs(Z, pos, neg, k), repeat)
        row = {"case": f"raw n={n} bits={nbits}", "pairs": len(pos) * len(neg), "adjacent": len(P), "python": t_py}
        if _ckernels is not None:
            row["cython"], _ = _best(lambda: _ckernels.adjacent_pairs(Z, pos, neg, k, threads), repeat)
        rows.append(row)
    return rows


def _homogenized(cds):
    top = np.zeros((1, cds.A.shape[1] + 1), dtype=np.int64)
    top[0, 0] = 1
    return np.vstack([top, np.hstack([-cds.b[:, None], cds.A])])


def bench_dd(ds, orders, repeat, threads):
    impls = {"python": _pykernels.adjacent_pairs}
    if _ckernels is not None:
        impls["cython"] = _ckernels.adjacent_pairs
    saved = (_kernels.adjacent_pairs, _kernels.BACKEND)
    rows = []
    try:
        for d in ds:
            cds = build_cd_inequalities(d)
            M = _homogenized(cds)
            want = len(conjectured_vertices(d).vertices)
            for order in orders:
                row = {"case": f"DD C_{d} order={order}"}
                for name, fn in impls.items():
                    _kernels.adjacent_pairs, _kernels.BACKEND = fn, name
                    t, (rays, stats) = _best(lambda: cone_extreme_rays(M, order=order, n_threads=threads), repeat)
                    assert len(rays) == want, (d, order, name, len(rays))
                    row[name] = t
                    row["max_rays"] = stats.max_rays
                rows.append(row)
    finally:
        _kernels.adjacent_pairs, _kernels.BACKEND = saved
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=0)
    ap.add_argument("--d5", action="store_true", help="include C_5 (minutes with the numpy kernel)")
    ap.add_argument("--json", help="write the timings here")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled kernel not built; timing the numpy kernel only")
    rows = bench_raw(args.repeat, args.threads)
    # maxcut is the deliberately bad insertion order: it shows how the
    # intermediate ray count, and so the kernel load, depends on order.
    # On C_4 it passes several thousand rays, so it is timed on C_3 only.
    rows += bench_dd([3], ["mincut", "maxcut"], args.repeat, args.threads)
    rows += bench_dd([4], ["mincut"], args.repeat, args.threads)
    if args.d5:
        rows += bench_dd([5], ["mincut"], 1, args.threads)

    print(f"{'case':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for r in rows:
        cy = r.get("cython")
        speed = f"{r['python'] / cy:8.1f}" if cy else f"{'-':>8s}"
        print(f"{r['case']:32s} {r['python']:10.4f} {cy if cy is not None else float('nan'):10.4f} {speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"kernel_available": _ckernels is not None, "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
