"""H/V conversions and related exact operations on polytopes."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import DegenerateHullError, UnboundedPolytopeError
from .dd import cone_extreme_rays
from .linalg import has_full_column_rank, nullspace, solve_affine
from .lp import LinearProgram
from .pivot import edge_walk
from .rational import integer_row, to_fraction
from .types import ConvexCombination, HPolytope, SeparatingHyperplane, VPolytope

BACKENDS = ("dd", "pivot")


def is_bounded(h: HPolytope, lp: LinearProgram | None = None) -> bool:
    """True iff every coordinate has a finite max and min over ``h``.

    Uses 2 * dim exact LPs. The empty set counts as bounded.
    """
    lp = lp or LinearProgram(h)
    if not lp.feasible():
        return True
    for i in range(h.dim):
        c = [0] * h.dim
        c[i] = 1
        for sense in ("max", "min"):
            if lp.solve(c, sense).status == "unbounded":
                return False
    return True


@dataclass
class _Reduced:
    """Inequalities pulled back to the free coordinates ``z`` of ``x = x0 + N z``."""

    x0: list
    N: list | None
    k: int
    A: np.ndarray
    b: np.ndarray
    infeasible: bool = False

    def lift(self, z) -> tuple:
        if self.N is None:
            return tuple(z)
        return tuple(
            x + sum((row[t] * z[t] for t in range(self.k) if row[t] and z[t]), Fraction(0))
            for x, row in zip(self.x0, self.N)
        )


def _reduce(h: HPolytope) -> _Reduced:
    if h.equalities:
        sol = solve_affine([e for e, _ in h.equalities], [f for _, f in h.equalities], h.dim)
        if sol is None:
            return _Reduced([], None, 0, np.zeros((0, 0), dtype=object), np.zeros(0, dtype=object), True)
        x0, N = sol
        k = len(N[0]) if N and N[0] else 0
    else:
        x0, N, k = [Fraction(0)] * h.dim, None, h.dim
    rows, rhs = [], []
    infeasible = False
    for a, b in h.inequalities:
        if N is None:
            ar, br = list(a), b
        else:
            ar = [sum((a[i] * N[i][t] for i in range(h.dim) if a[i]), Fraction(0)) for t in range(k)]
            br = b - sum((ai * xi for ai, xi in zip(a, x0) if ai), Fraction(0))
        if not any(ar):
            infeasible |= br > 0
            continue
        ints, _ = integer_row(ar + [br])
        rows.append(ints[:-1])
        rhs.append(ints[-1])
    A = np.array(rows, dtype=object).reshape(len(rows), k)
    return _Reduced(x0, N, k, A, np.array(rhs, dtype=object), infeasible)


def _tight_rank_ok(h: HPolytope, x) -> bool:
    """``x`` satisfies ``h`` exactly and its tight rows (with equalities) have rank ``dim``."""
    signs = h.slack_signs(x)
    if (signs < 0).any() or not h.contains(x):
        return False
    # positive row scaling does not change rank, so the cached integer rows serve
    tight = h._int_system()[signs == 0, 1:]
    eq = [integer_row(e)[0] for e, _ in h.equalities]
    if eq:
        tight = np.vstack([tight.astype(object), np.array(eq, dtype=object)])
    if not tight.shape[0]:
        return False
    return has_full_column_rank(tight)


def vertex_enumeration(
    h: HPolytope,
    backend: str = "dd",
    order: str = "mincut",
    max_rays=None,
    time_limit=None,
    checkpoint=None,
    n_threads: int = 0,
    check_bounded: bool = True,
    progress=None,
) -> VPolytope:
    """Exact vertex list of a bounded H-polytope.

    Parameters
    ----------
    h : HPolytope
    backend : {"dd", "pivot"}
        Double description on the homogenized cone, or an edge-graph walk.
    order, max_rays, time_limit, checkpoint, n_threads
        Passed to the double description routine.
    check_bounded : bool
        Run :func:`is_bounded` first (2 * dim LPs).

    Returns
    -------
    VPolytope
        Empty with ``infeasible=True`` when ``h`` has no points. ``stats``
        carries timings and enumeration statistics.

    Raises
    ------
    UnboundedPolytopeError
        If ``h`` is unbounded.
    """
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    t0 = time.perf_counter()
    stats = {"backend": backend}
    lp = LinearProgram(h)
    if not lp.feasible():
        return VPolytope(h.dim, [], infeasible=True, stats=stats)
    if check_bounded:
        tb = time.perf_counter()
        bounded = is_bounded(h, lp)
        stats["bounded_check_seconds"] = time.perf_counter() - tb
        if not bounded:
            raise UnboundedPolytopeError("polytope is unbounded")
    red = _reduce(h)
    if red.k == 0:
        return VPolytope(h.dim, [red.lift([])], stats=stats)
    if not red.A.shape[0] or not has_full_column_rank(red.A):
        raise UnboundedPolytopeError("constraint matrix has a lineality space")

    te = time.perf_counter()
    if backend == "dd":
        M = np.vstack([np.array([[1] + [0] * red.k], dtype=object), np.hstack([-red.b[:, None], red.A])])
        rays, dd_stats = cone_extreme_rays(
            M, order=order, max_rays=max_rays, time_limit=time_limit,
            checkpoint=checkpoint, n_threads=n_threads, progress=progress,
        )
        stats["dd"] = dd_stats.to_json()
        points = []
        for r in rays:
            if r[0] == 0:
                raise UnboundedPolytopeError("recession direction found")
            points.append([Fraction(v, r[0]) for v in r[1:]])
    else:
        start = lp.solve([1] * h.dim, "max")
        if not start.optimal:
            raise UnboundedPolytopeError("no optimal start vertex")
        z0 = _pull_back(red, start.point, h)
        points = edge_walk(red.A, red.b, z0, progress=progress)
    stats["enumeration_seconds"] = time.perf_counter() - te

    verts = [red.lift(z) for z in points]
    for v in verts:
        if not _tight_rank_ok(h, v):
            raise ArithmeticError(f"enumerated point {v} is not a vertex")
    stats["seconds"] = time.perf_counter() - t0
    return VPolytope(h.dim, verts, stats=stats)


def _pull_back(red: _Reduced, x, h: HPolytope) -> list:
    """Coordinates ``z`` with ``lift(z) == x``; the LP start is a vertex of ``h``."""
    if red.N is None:
        return list(x)
    diff = [xi - x0i for xi, x0i in zip(x, red.x0)]
    sol = solve_affine(red.N, diff, red.k)
    if sol is None:
        raise ArithmeticError("point is off the affine hull")
    return sol[0]


def _canonical(a, b) -> tuple:
    ints, _ = integer_row(list(a) + [b])
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def affine_hull(points, dim: int) -> list:
    """Equalities ``(e, f)`` spanning the affine hull's orthogonal complement."""
    pts = [[to_fraction(v) for v in p] for p in points]
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    normals = nullspace(diffs, dim) if diffs else nullspace([], dim)
    out = []
    for e in normals:
        e, _ = _canonical(e, 0)
        out.append((e, sum((ei * xi for ei, xi in zip(e, pts[0])), Fraction(0))))
    return out


def facet_enumeration(v: VPolytope, order: str = "mincut", n_threads: int = 0) -> HPolytope:
    """Irredundant facets ``a.x >= b`` of a full-dimensional V-polytope.

    Each facet is scaled to coprime integers with a positive factor (the
    direction of the inequality is kept). Facets are sorted.

    Raises
    ------
    DegenerateHullError
        If the vertices do not affinely span the space; the detected affine
        hull is attached.
    """
    dim = v.dim
    if not v.vertices:
        raise DegenerateHullError("empty vertex list", [])
    hull = affine_hull(v.vertices, dim)
    if hull:
        raise DegenerateHullError(f"vertices span a {dim - len(hull)}-dimensional affine hull", hull)
    # cone of valid inequalities (c0, a) with c0 + a.v >= 0; its extreme rays are the facets
    M = np.array([integer_row([1] + list(p))[0] for p in v.vertices], dtype=object)
    rays, _ = cone_extreme_rays(M, order=order, n_threads=n_threads)
    ineq = sorted(_canonical(r[1:], -r[0]) for r in rays)
    return HPolytope(dim, ineq)


def hull_membership(v: VPolytope, x, lp_limit=None):
    """Exact convex weights for ``x`` over ``v``, or a separating hyperplane.

    The weights maximize the smallest weight, so symmetric points get
    symmetric weights and a vertex gets weight 1 on itself. The separating
    hyperplane ``a.y >= b`` (with ``|a_i| <= 1``) maximizes the violation
    margin ``b - a.x``.
    """
    x = [to_fraction(t) for t in x]
    if len(x) != v.dim:
        raise ValueError("point dimension does not match the polytope")
    n, dim = len(v.vertices), v.dim
    if n == 0:
        raise ValueError("empty vertex list")
    # variables w_1..w_n, t
    ineq = []
    for k in range(n):
        a = [0] * (n + 1)
        a[k] = 1
        ineq.append((a, 0))
        a = [0] * (n + 1)
        a[k] = 1
        a[n] = -1
        ineq.append((a, 0))
    eq = [([1] * n + [0], 1)]
    for c in range(dim):
        eq.append(([v.vertices[k][c] for k in range(n)] + [0], x[c]))
    res = LinearProgram(HPolytope(n + 1, ineq, eq)).solve([0] * n + [1], "max")
    if res.optimal:
        return ConvexCombination([(k, w) for k, w in enumerate(res.point[:n]) if w != 0])
    # separation: min a.x - b subject to a.v_k - b >= 0, -1 <= a_i <= 1
    ineq = [(list(p) + [-1], 0) for p in v.vertices]
    for c in range(dim):
        e = [0] * (dim + 1)
        e[c] = 1
        ineq.append((e, -1))
        e = [0] * (dim + 1)
        e[c] = -1
        ineq.append((e, -1))
    res = LinearProgram(HPolytope(dim + 1, ineq)).solve(list(x) + [-1], "min")
    if not res.optimal or res.value >= 0:
        raise ArithmeticError("membership and separation LPs disagree")
    return SeparatingHyperplane(tuple(res.point[:dim]), res.point[dim], -res.value)


@dataclass
class RedundancyReport:
    kept: list
    removed: list
    certificates: dict = field(default_factory=dict)  # removed row -> LpResult

    @property
    def counts(self) -> dict:
        return {"kept": len(self.kept), "removed": len(self.removed)}


def remove_redundant(h: HPolytope):
    """Drop inequalities implied by the others, one at a time.

    Row ``i`` is removed when ``min a_i.x`` over the remaining system is at
    least ``b_i``; the optimal LP (with its dual certificate) is recorded.

    Returns
    -------
    (HPolytope, RedundancyReport)
    """
    kept = list(range(len(h.inequalities)))
    removed, certs = [], {}
    for i in range(len(h.inequalities)):
        rest = [h.inequalities[j] for j in kept if j != i]
        a, b = h.inequalities[i]
        if not rest and not h.equalities:
            continue
        if not rest:
            res = LinearProgram(HPolytope(h.dim, [], h.equalities)).solve(a, "min")
        else:
            res = LinearProgram(HPolytope(h.dim, rest, h.equalities)).solve(a, "min")
        if res.optimal and res.value >= b:
            kept.remove(i)
            removed.append(i)
            certs[i] = res
    out = HPolytope(h.dim, [h.inequalities[j] for j in kept], list(h.equalities))
    return out, RedundancyReport(kept, removed, certs)


def implies(h: HPolytope, a, b) -> bool:
    """True iff ``a.x >= b`` holds on all of ``h`` (empty ``h`` implies anything)."""
    res = LinearProgram(h).solve(a, "min")
    if res.status == "infeasible":
        return True
    return res.optimal and res.value >= to_fraction(b)


def h_contains(outer: HPolytope, inner: HPolytope) -> bool:
    """``inner`` is a subset of ``outer``, checked by one LP per outer row."""
    lp = LinearProgram(inner)
    if not lp.feasible():
        return True
    for a, b in outer.inequalities:
        res = lp.solve(a, "min")
        if not res.optimal or res.value < b:
            return False
    for e, f in outer.equalities:
        lo, hi = lp.solve(e, "min"), lp.solve(e, "max")
        if not (lo.optimal and hi.optimal and lo.value == f == hi.value):
            return False
    return True


def h_equal(h1: HPolytope, h2: HPolytope) -> bool:
    """Set equality by mutual LP containment."""
    return h_contains(h1, h2) and h_contains(h2, h1)


@dataclass
class PolytopeDiff:
    missing: list  # in the reference list, not enumerated
    extra: list  # enumerated, not in the reference list

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra


def polytope_equal(enumerated: VPolytope, conjectured: VPolytope):
    """Exact set equality of vertex lists, with the differences."""
    if enumerated.dim != conjectured.dim:
        raise ValueError("dimension mismatch")
    a, b = set(enumerated.vertices), set(conjectured.vertices)
    diff = PolytopeDiff(sorted(b - a), sorted(a - b))
    return diff.equal, diff
