from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .rational import integer_row, to_fraction


def _int_matrix(rows) -> np.ndarray:
    if rows.size and max(abs(int(v)) for v in rows.flat) < 2 ** 31:
        return rows.astype(np.int64)
    return rows


def _vec(values) -> tuple:
    return tuple(to_fraction(v) for v in values)


@dataclass
class HPolytope:
    """{x : a.x >= b for each inequality, e.x = f for each equality}.

    ``inequalities`` and ``equalities`` are lists of ``(coeffs, rhs)`` pairs
    with exact rational entries.
    """

    dim: int
    inequalities: list
    equalities: list = field(default_factory=list)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        self.inequalities = [(_vec(a), to_fraction(b)) for a, b in self.inequalities]
        self.equalities = [(_vec(e), to_fraction(f)) for e, f in self.equalities]
        for a, _ in self.inequalities + self.equalities:
            if len(a) != self.dim:
                raise ValueError(f"row of length {len(a)} in a {self.dim}-dimensional polytope")
            if not any(a):
                raise ValueError("zero coefficient row")

    @classmethod
    def from_arrays(cls, A, b, E=None, f=None):
        A = [list(r) for r in A]
        dim = len(A[0]) if A else len(E[0])
        ineq = list(zip(A, b))
        eq = list(zip([list(r) for r in E], f)) if E is not None else []
        return cls(dim, ineq, eq)

    @classmethod
    def from_integer_arrays(cls, A, b) -> "HPolytope":
        """``A x >= b`` from integer arrays, keeping the integer form for fast checks."""
        A = np.asarray(A)
        b = np.asarray(b)
        h = cls(A.shape[1], [(list(map(int, row)), int(bi)) for row, bi in zip(A, b)])
        h._int_cache = _int_matrix(np.hstack([-b.reshape(-1, 1), A]).astype(object))
        return h

    def integer_rows(self):
        """Inequalities scaled to coprime integers: rows ``[-b, a...]`` as an object array."""
        rows = [integer_row([-b] + list(a))[0] for a, b in self.inequalities]
        return np.array(rows, dtype=object).reshape(len(rows), self.dim + 1)

    def _int_system(self):
        # rows scaled to integers, cached; column 0 holds -b
        if getattr(self, "_int_cache", None) is None:
            self._int_cache = _int_matrix(self.integer_rows())
        return self._int_cache

    def slack_signs(self, x) -> np.ndarray:
        """Sign of ``a.x - b`` for every inequality, computed in integers."""
        x = _vec(x)
        if len(x) != self.dim:
            raise ValueError("point has the wrong dimension")
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        vec = [den] + [int(v * den) for v in x]
        M = self._int_system()
        if not M.shape[0]:
            return np.zeros(0, dtype=np.int64)
        if M.dtype != object and max(abs(t) for t in vec) * int(np.abs(M).max()) * M.shape[1] < 2 ** 62:
            vals = M @ np.array(vec, dtype=np.int64)
        else:
            vals = M.astype(object).dot(np.array(vec, dtype=object))
        return np.sign(vals).astype(np.int64)

    def contains(self, x) -> bool:
        x = _vec(x)
        if not bool(np.all(self.slack_signs(x) >= 0)):
            return False
        return all(sum(ei * xi for ei, xi in zip(e, x)) == f for e, f in self.equalities)

    def slacks(self, x) -> list:
        x = _vec(x)
        return [sum(ai * xi for ai, xi in zip(a, x)) - b for a, b in self.inequalities]


@dataclass
class VPolytope:
    """Convex hull of a vertex list, deduplicated and sorted lexicographically."""

    dim: int
    vertices: list
    infeasible: bool = False
    stats: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        verts = {_vec(v) for v in self.vertices}
        for v in verts:
            if len(v) != self.dim:
                raise ValueError(f"vertex of length {len(v)} in dimension {self.dim}")
        self.vertices = sorted(verts)

    def __len__(self):
        return len(self.vertices)


@dataclass
class ConvexCombination:
    """Weights ``(vertex index, weight)``: nonnegative and summing to exactly 1."""

    weights: list

    def __post_init__(self):
        self.weights = [(int(i), to_fraction(w)) for i, w in self.weights]
        if any(w < 0 for _, w in self.weights):
            raise ValueError("negative weight")
        if sum(w for _, w in self.weights) != 1:
            raise ValueError("weights do not sum to 1")

    def point(self, vertices) -> tuple:
        dim = len(vertices[0])
        acc = [Fraction(0)] * dim
        for i, w in self.weights:
            for k in range(dim):
                acc[k] += w * vertices[i][k]
        return tuple(acc)

    def as_dict(self) -> dict:
        return dict(self.weights)


@dataclass
class SeparatingHyperplane:
    """``a.v >= b`` for every vertex while ``a.x < b`` for the refused point."""

    a: tuple
    b: Fraction
    margin: Fraction

    def value(self, x) -> Fraction:
        return sum(ai * to_fraction(xi) for ai, xi in zip(self.a, x)) - self.b


@dataclass
class LpResult:
    """Outcome of :func:`lp_solve`.

    ``dual`` (when optimal) holds nonnegative multipliers ``y_i`` for the
    inequalities and ``mu`` for the equalities with
    ``sum y_i a_i + sum mu_k e_k == c`` for the minimization form of the
    objective; together with ``value`` this certifies optimality.
    """

    status: str
    value: Fraction = None
    point: tuple = None
    dual: dict = None
    mu: tuple = None
    sense: str = "max"
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"
