"""Exact linear programming over the rationals.

Problems have the form ``opt c.x`` subject to ``A x >= b`` and ``E x = f``
with free ``x``. Equalities are eliminated first, a lineality space (if
any) is split off, and the remaining full-column-rank problem
``min c.z s.t. A z >= b`` is solved through its dual
``max b.y s.t. A^T y = c, y >= 0`` with a two-phase revised simplex and
Dantzig pricing that drops to Bland's rule on degenerate pivots (so it
cannot cycle). The basis matrix is only (dim x dim), so problems with many
more rows than columns stay cheap: pricing all rows is one integer
matrix-vector product.

A floating-point solve (HiGHS through scipy) proposes a starting basis.
The proposal is accepted only if it is exactly feasible for the dual, and
from there the exact simplex finishes the job; on highly degenerate
systems this removes nearly all pivots.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce

import numpy as np

from .linalg import MOD_PRIME, inverse, mod_row_basis, nullspace, rref, solve_affine
from .rational import integer_row, lcm, to_fraction
from .types import HPolytope, LpResult

_INT64_SAFE = 2 ** 62


def _matvec(A: np.ndarray, v: list) -> np.ndarray:
    """Exact ``A @ v`` for an integer matrix and a list of Python ints."""
    if A.dtype != object:
        vmax = max((abs(x) for x in v), default=0)
        amax = int(np.abs(A).max()) if A.size else 0
        if vmax * amax * max(1, A.shape[1]) < _INT64_SAFE:
            return A @ np.array(v, dtype=np.int64)
        A = A.astype(object)
    return A.dot(np.array(v, dtype=object))


def _to_int_matrix(rows) -> np.ndarray:
    """Integer rows as int64 when safe, otherwise an object array."""
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    mx = max((abs(x) for r in rows for x in r), default=0)
    if mx < 2 ** 31:
        return np.array(rows, dtype=np.int64)
    return np.array(rows, dtype=object)


def _independent_rows(A: np.ndarray, candidates, r: int):
    """Greedy choice of r rows independent modulo MOD_PRIME, in candidate order."""
    echelon = {}  # pivot column -> reduced row
    chosen = []
    seen = set()
    for i in candidates:
        i = int(i)
        if i in seen:
            continue
        seen.add(i)
        v = [int(x) % MOD_PRIME for x in A[i]]
        for c, row in echelon.items():
            if v[c]:
                f = v[c]
                v = [(a - f * b) % MOD_PRIME for a, b in zip(v, row)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], MOD_PRIME - 2, MOD_PRIME)
        v = [(x * inv) % MOD_PRIME for x in v]
        for c, row in echelon.items():
            if row[piv]:
                f = row[piv]
                echelon[c] = [(a - f * b) % MOD_PRIME for a, b in zip(row, v)]
        echelon[piv] = v
        chosen.append(i)
        if len(chosen) == r:
            return chosen
    return None


class _DualSimplex:
    """Revised simplex for ``max g.y s.t. M y = h, y >= 0`` with ``M = A^T``.

    ``A`` is (m x r) integer; column j of ``M`` is row j of ``A``.
    """

    def __init__(self, A: np.ndarray, b: list, c: list, max_iter=None):
        self.A = A
        self.m, self.r = A.shape
        self.g = list(b)
        self.sgn = [1 if ci >= 0 else -1 for ci in c]
        self.h = [abs(ci) for ci in c]
        if any(s < 0 for s in self.sgn):
            flip = np.array(self.sgn, dtype=A.dtype if A.dtype != object else object)
            self.As = A * flip[None, :]
        else:
            self.As = A
        self.b_arr = np.array(self.g, dtype=object)
        self.max_iter = max_iter
        self.iterations = 0

    # basis variables: 0..m-1 structural, m..m+r-1 artificial
    def _column(self, j):
        if j < self.m:
            return [Fraction(int(x)) for x in self.As[j]]
        col = [Fraction(0)] * self.r
        col[j - self.m] = Fraction(1)
        return col

    def _pi(self, cost_basic):
        r = self.r
        return [sum((cost_basic[k] * self.Binv[k][i] for k in range(r) if cost_basic[k]), Fraction(0)) for i in range(r)]

    def _pivot(self, k, u):
        r = self.r
        pv = u[k]
        rowk = [x / pv for x in self.Binv[k]]
        self.Binv[k] = rowk
        xk = self.xB[k] / pv
        self.xB[k] = xk
        for i in range(r):
            if i != k and u[i]:
                f = u[i]
                self.Binv[i] = [a - f * b for a, b in zip(self.Binv[i], rowk)]
                self.xB[i] -= f * xk
        self.iterations += 1

    def _entering(self, pi, phase, bland):
        """Entering column: Dantzig pricing, or Bland (smallest index) when ``bland``."""
        den = reduce(lcm, (p.denominator for p in pi), 1)
        P = [int(p * den) for p in pi]
        t = _matvec(self.As, P)
        # reduced cost * den = den * g_j - t_j  (phase 2), -t_j (phase 1)
        if phase == 1:
            rc = -t
        elif t.dtype != object and max(abs(x) for x in self.g) * den < _INT64_SAFE:
            rc = np.array(self.g, dtype=np.int64) * den - t
        else:
            rc = self.b_arr * den - t.astype(object)
        inbasis = self.in_basis
        best = None
        cand = np.nonzero(rc > 0)[0]
        if not bland and cand.size:
            order = cand[np.argsort(-rc[cand].astype(float), kind="stable")]
            # float ordering is only a hint; confirm the exact maximum
            top = max(int(rc[j]) for j in order[:8])
            for j in order:
                j = int(j)
                if j not in inbasis and int(rc[j]) == top:
                    best = (top, j)
                    break
            if best is None:
                for j in order:
                    j = int(j)
                    if j not in inbasis:
                        best = (int(rc[j]), j)
                        break
        else:
            for j in cand:
                j = int(j)
                if j not in inbasis:
                    best = (int(rc[j]), j)
                    break
        if phase == 1 and (best is None or not bland):
            # artificial columns: cost -1, reduced cost -1 - pi_i
            for i in range(self.r):
                j = self.m + i
                val = -den - P[i]
                if j not in inbasis and val > 0 and (best is None or (not bland and val > best[0])):
                    best = (val, j)
                    if bland:
                        break
        return None if best is None else best[1]

    def _ratio(self, u):
        best = None
        for k in range(self.r):
            if u[k] > 0:
                ratio = self.xB[k] / u[k]
                key = (ratio, self.basis[k])
                if best is None or key < best[0]:
                    best = (key, k)
        return None if best is None else best[1]

    def _run(self, phase):
        bland = False
        while True:
            if self.max_iter is not None and self.iterations >= self.max_iter:
                raise RuntimeError("simplex iteration limit reached")
            if phase == 1:
                cost_basic = [Fraction(-1) if j >= self.m else Fraction(0) for j in self.basis]
            else:
                cost_basic = [Fraction(self.g[j]) if j < self.m else Fraction(0) for j in self.basis]
            pi = self._pi(cost_basic)
            j = self._entering(pi, phase, bland)
            if j is None:
                return "optimal", pi
            col = self._column(j)
            u = [sum((self.Binv[i][k] * col[k] for k in range(self.r) if col[k]), Fraction(0)) for i in range(self.r)]
            k = self._ratio(u)
            if k is None:
                return "unbounded", pi
            # degenerate step: stay on Bland's rule until the objective moves
            bland = self.xB[k] == 0
            self.in_basis.discard(self.basis[k])
            self._pivot(k, u)
            self.basis[k] = j
            self.in_basis.add(j)

    def _try_start(self, start) -> bool:
        """Install a structural starting basis if it is primal feasible for the dual."""
        r = self.r
        cols = [self._column(j) for j in start]
        M = [[cols[k][i] for k in range(r)] for i in range(r)]
        try:
            Binv = inverse(M)
        except ZeroDivisionError:
            return False
        xB = [sum((Binv[i][t] * self.h[t] for t in range(r) if self.h[t]), Fraction(0)) for i in range(r)]
        if any(x < 0 for x in xB):
            return False
        self.basis = list(start)
        self.in_basis = set(start)
        self.Binv = Binv
        self.xB = xB
        return True

    def solve(self, start=None):
        r, m = self.r, self.m
        if start is not None and len(start) == r and self._try_start(start):
            status, pi = self._run(2)
            if status != "optimal":
                return status, None, None
            return self._result(pi)
        self.basis = [m + i for i in range(r)]
        self.in_basis = set(self.basis)
        self.Binv = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        self.xB = [Fraction(x) for x in self.h]
        self._run(1)
        if sum(x for k, x in enumerate(self.xB) if self.basis[k] >= m) > 0:
            return "infeasible", None, None
        # drive zero-level artificials out where possible
        for k in range(r):
            if self.basis[k] < m:
                continue
            den = reduce(lcm, (x.denominator for x in self.Binv[k]), 1)
            row = [int(x * den) for x in self.Binv[k]]
            vals = _matvec(self.As, row)
            for j in np.nonzero(vals != 0)[0]:
                j = int(j)
                if j in self.in_basis:
                    continue
                col = self._column(j)
                u = [sum((self.Binv[i][t] * col[t] for t in range(r) if col[t]), Fraction(0)) for i in range(r)]
                self.in_basis.discard(self.basis[k])
                self._pivot(k, u)
                self.basis[k] = j
                self.in_basis.add(j)
                break
        status, pi = self._run(2)
        if status != "optimal":
            return status, None, None
        return self._result(pi)

    def _result(self, pi):
        m, r = self.m, self.r
        y = {self.basis[k]: self.xB[k] for k in range(r) if self.basis[k] < m and self.xB[k] != 0}
        z = [p * s for p, s in zip(pi, self.sgn)]
        return "optimal", z, y


class LinearProgram:
    """An H-polytope preprocessed for repeated exact LP solves."""

    def __init__(self, h: HPolytope, warm_start: bool = True):
        self.h = h
        self.warm_start = warm_start
        self._feasible = None
        self.dim = h.dim
        self.infeasible = False
        if h.equalities:
            sol = solve_affine([e for e, _ in h.equalities], [f for _, f in h.equalities], h.dim)
            if sol is None:
                self.infeasible = True
                return
            self.x0, N = sol
            self.N = N
            self.k = len(N[0]) if N else 0
        else:
            self.x0 = [Fraction(0)] * h.dim
            self.N = None
            self.k = h.dim

        rows, self.row_ids, self.row_scale = [], [], []
        for idx, (a, b) in enumerate(h.inequalities):
            if self.N is None:
                ar, br = list(a), b
            else:
                ar = [sum((a[i] * self.N[i][t] for i in range(self.dim) if a[i]), Fraction(0)) for t in range(self.k)]
                br = b - sum((ai * xi for ai, xi in zip(a, self.x0) if ai), Fraction(0))
            if not any(ar):
                if br > 0:
                    self.infeasible = True
                continue
            ints, scale = integer_row(ar + [br])
            rows.append(ints)
            self.row_ids.append(idx)
            self.row_scale.append(scale)
        self.m = len(rows)
        self.A_full = _to_int_matrix([r[:-1] for r in rows]) if rows else np.zeros((0, self.k), dtype=np.int64)
        self.b = [r[-1] for r in rows]

        # lineality: restrict to pivot columns of the row space
        self.cols = list(range(self.k))
        self.lineality = []
        if self.k and self.m:
            basis = mod_row_basis(self.A_full)
            if len(basis) < self.k:
                R, pivots = rref(self.A_full.tolist(), self.k)
                self.lineality = nullspace(R, self.k) if len(pivots) < self.k else []
                self.cols = pivots
        elif self.k:
            self.lineality = nullspace([], self.k)
            self.cols = []
        self.A = self.A_full[:, self.cols] if self.m else np.zeros((0, len(self.cols)), dtype=np.int64)

    def _lift(self, z_red) -> tuple:
        z = [Fraction(0)] * self.k
        for c, v in zip(self.cols, z_red):
            z[c] = v
        if self.N is None:
            return tuple(z)
        return tuple(
            self.x0[i] + sum((self.N[i][t] * z[t] for t in range(self.k) if z[t]), Fraction(0))
            for i in range(self.dim)
        )

    def _reduced_objective(self, c):
        if self.N is None:
            return list(c)
        return [sum((c[i] * self.N[i][t] for i in range(self.dim) if c[i]), Fraction(0)) for t in range(self.k)]

    def feasible(self) -> bool:
        if self.infeasible:
            return False
        if not self.cols or not self.m:
            return all(bi <= 0 for bi in self.b)
        if self._feasible is None:
            # min (w^T A) z is bounded below by w.b on a nonempty set and y = w is
            # dual feasible, so the dual is either optimal or unbounded
            c = [0] * len(self.cols)
            for weights in (np.ones(self.m, dtype=np.int64), np.arange(1, self.m + 1, dtype=np.int64)):
                c = [int(v) for v in _matvec(self.A.T.copy(), [int(w) for w in weights])]
                if any(c):
                    break
            solver = _DualSimplex(self.A, self.b, c)
            start = self._float_basis(c) if self.warm_start and any(c) else None
            status, _, _ = solver.solve(start)
            self._feasible = status != "unbounded"
        return self._feasible

    def solve(self, objective, sense="max", max_iter=None) -> LpResult:
        if sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        c = [to_fraction(v) for v in objective]
        if len(c) != self.dim:
            raise ValueError("objective length does not match dimension")
        if self.infeasible:
            return LpResult("infeasible", sense=sense)
        cmin = c if sense == "min" else [-v for v in c]
        cz = self._reduced_objective(cmin)
        if any(sum(ci * li for ci, li in zip(cz, l)) != 0 for l in self.lineality):
            return LpResult("unbounded" if self.feasible() else "infeasible", sense=sense)
        cr = [cz[t] for t in self.cols]

        if not self.cols or not self.m:
            if not all(bi <= 0 for bi in self.b):
                return LpResult("infeasible", sense=sense)
            x = self._lift([Fraction(0)] * len(self.cols))
            return self._finish(c, sense, x, {}, 0)

        cint, cscale = integer_row(cr)
        solver = _DualSimplex(self.A, self.b, cint, max_iter=max_iter)
        start = self._float_basis(cint) if self.warm_start else None
        status, z, y = solver.solve(start)
        if status == "infeasible":
            return LpResult("unbounded" if self.feasible() else "infeasible", sense=sense, iterations=solver.iterations)
        if status == "unbounded":
            return LpResult("infeasible", sense=sense, iterations=solver.iterations)
        x = self._lift(z)
        dual = {self.row_ids[j]: v * self.row_scale[j] / cscale for j, v in y.items()}
        return self._finish(c, sense, x, dual, solver.iterations)

    def _float_basis(self, cint):
        """Guess an optimal basis with a floating-point LP.

        The guess only seeds the exact simplex; a wrong or failed guess
        costs a cold start, never a wrong answer.
        """
        try:
            from scipy.optimize import linprog
        except ImportError:  # pragma: no cover
            return None
        A = self.A.astype(float)
        b = np.array([float(x) for x in self.b])
        res = linprog(np.array(cint, dtype=float), A_ub=-A, b_ub=-b, bounds=(None, None), method="highs")
        if res.status != 0:
            return None
        y = -np.asarray(res.ineqlin.marginals)
        slack = A @ res.x - b
        scale = max(1.0, float(np.abs(b).max(initial=0.0)))
        support = np.nonzero(y > 1e-9)[0]
        support = support[np.argsort(-y[support], kind="stable")]
        tight = np.nonzero(slack <= 1e-7 * scale)[0]
        return _independent_rows(self.A, list(support) + list(tight), len(self.cols))

    def _finish(self, c, sense, x, dual, iterations) -> LpResult:
        if not self.h.contains(x):
            raise ArithmeticError("LP solution violates a constraint")
        value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
        mu = None
        if self.h.equalities:
            cmin = c if sense == "min" else [-v for v in c]
            resid = list(cmin)
            for i, yv in dual.items():
                a = self.h.inequalities[i][0]
                resid = [r - yv * ai for r, ai in zip(resid, a)]
            ET = [[e[k] for e, _ in self.h.equalities] for k in range(self.dim)]
            sol = solve_affine(ET, resid, len(self.h.equalities))
            mu = tuple(sol[0]) if sol is not None else None
        return LpResult("optimal", value, x, dual, mu, sense, iterations)


def lp_solve(objective, h: HPolytope, sense: str = "max") -> LpResult:
    """Exact LP over an H-polytope; status is optimal, infeasible or unbounded."""
    return LinearProgram(h).solve(objective, sense)


def check_certificate(res: LpResult, objective, h: HPolytope) -> bool:
    """Verify the dual certificate attached to an optimal LpResult."""
    if not res.optimal:
        return False
    c = [to_fraction(v) for v in objective]
    cmin = c if res.sense == "min" else [-v for v in c]
    if any(v < 0 for v in res.dual.values()):
        return False
    lhs = [Fraction(0)] * h.dim
    bound = Fraction(0)
    for i, yv in res.dual.items():
        a, b = h.inequalities[i]
        lhs = [l + yv * ai for l, ai in zip(lhs, a)]
        bound += yv * b
    if h.equalities:
        if res.mu is None:
            return False
        for mk, (e, f) in zip(res.mu, h.equalities):
            lhs = [l + mk * ei for l, ei in zip(lhs, e)]
            bound += mk * f
    if lhs != cmin:
        return False
    vmin = res.value if res.sense == "min" else -res.value
    return vmin == bound
