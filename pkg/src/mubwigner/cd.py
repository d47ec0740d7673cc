"""The polytope C_d of probability tables non-negative under every definition.

Every definition turns ``W(alpha) >= 0`` into ``sum_i p_{i, j_i} >= 1`` for
one choice of vector ``j_i`` per basis, and every tuple ``(j_1..j_{d+1})``
arises, so C_d has exactly d^(d+1) defining inequalities. Coordinates are
``p_{i,j}`` with ``j < d``; the last vector of each basis is eliminated
through ``p_{i,d} = 1 - sum_{j<d} p_{i,j}``. Coordinate ``(i, j)`` (1-based)
sits at index ``(i-1)(d-1) + (j-1)``.

The conjectured V-description is the set of d(d+1) MUB basis states.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidStateError, UnsupportedDimensionError
from .mub import build_mubs
from .gf import field_spec
from .polytope.linalg import has_full_column_rank
from .polytope.ops import hull_membership, is_bounded, polytope_equal, vertex_enumeration
from .polytope.rational import to_fraction
from .polytope.types import ConvexCombination, HPolytope, VPolytope
from .wigner import DensityMatrix, PMatrix, p_matrix_from_state

CD_ORDERS = (2, 3, 4, 5)


def _check_d(d: int):
    if d not in CD_ORDERS:
        raise UnsupportedDimensionError(d, CD_ORDERS)


def coordinate_index(d: int, i: int, j: int) -> int:
    """Index of ``p_{i,j}`` (1-based, j < d) in the reduced coordinates."""
    if not (1 <= i <= d + 1 and 1 <= j <= d - 1):
        raise ValueError(f"p_({i},{j}) is not a free coordinate for d={d}")
    return (i - 1) * (d - 1) + (j - 1)


@dataclass
class CdSystem:
    """The d^(d+1) inequalities of C_d in dimension d^2 - 1.

    ``tuples[k]`` (1-based vector choices) produced row ``k`` of the integer
    arrays ``A``, ``b`` (meaning ``A x >= b``) and of ``h``.
    """

    d: int
    tuples: np.ndarray
    A: np.ndarray
    b: np.ndarray
    h: HPolytope

    @property
    def dim(self) -> int:
        return self.d * self.d - 1

    @property
    def coordinate_map(self) -> dict:
        d = self.d
        return {(i, j): coordinate_index(d, i, j) for i in range(1, d + 2) for j in range(1, d)}

    def tuple_sum(self, k: int, x) -> Fraction:
        """``sum_i p_{i, j_i}`` for row ``k`` at the point ``x``."""
        a, b = self.h.inequalities[k]
        return sum((ai * to_fraction(xi) for ai, xi in zip(a, x) if ai), Fraction(0)) - b + 1


def build_cd_inequalities(d: int) -> CdSystem:
    """One inequality per tuple in lexicographic order."""
    _check_d(d)
    n = d * d - 1
    tuples = np.array(list(itertools.product(range(1, d + 1), repeat=d + 1)), dtype=np.int64)
    m = len(tuples)
    A = np.zeros((m, n), dtype=np.int64)
    last = np.zeros(m, dtype=np.int64)
    rows = np.arange(m)
    for i in range(d + 1):
        j = tuples[:, i]
        free = j < d
        A[rows[free], i * (d - 1) + j[free] - 1] += 1
        A[np.ix_(rows[~free], np.arange(i * (d - 1), (i + 1) * (d - 1)))] -= 1
        last += ~free
    b = 1 - last
    return CdSystem(d, tuples, A, b, HPolytope.from_integer_arrays(A, b))


def conjectured_vertex(d: int, i0: int, j0: int) -> tuple:
    """The MUB state ``|alpha_{i0,j0}>`` in reduced coordinates (1-based labels)."""
    out = []
    for i in range(1, d + 2):
        for j in range(1, d):
            out.append(Fraction(int(j == j0)) if i == i0 else Fraction(1, d))
    return tuple(out)


def conjectured_labels(d: int) -> dict:
    """Map vertex -> (i0, j0)."""
    _check_d(d)
    return {conjectured_vertex(d, i, j): (i, j) for i in range(1, d + 2) for j in range(1, d + 1)}


def conjectured_vertices(d: int) -> VPolytope:
    _check_d(d)
    return VPolytope(d * d - 1, list(conjectured_labels(d)))


@dataclass
class EasyDirectionReport:
    d: int
    passed: bool
    value_counts: list  # per vertex {1: count, 2: count, other: count}
    tight_counts: list
    tight_ranks: list

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "passed": self.passed,
            "value_counts": [{str(k): v for k, v in c.items()} for c in self.value_counts],
            "tight_counts": self.tight_counts,
            "tight_ranks": self.tight_ranks,
        }


def _scaled_values(cds: CdSystem, x) -> tuple:
    """``den * (A x - b + 1)`` as exact integers, plus ``den``."""
    x = [to_fraction(v) for v in x]
    den = 1
    for v in x:
        den = den * v.denominator // np.gcd(den, v.denominator)
    X = np.array([int(v * den) for v in x], dtype=object)
    vals = cds.A.astype(object).dot(X) + (1 - cds.b).astype(object) * den
    return vals, den


def easy_direction_report(d: int, vertices=None, cds: CdSystem | None = None) -> EasyDirectionReport:
    """Check every (conjectured) vertex against all inequalities.

    Each must give tuple sums of exactly 1 or 2 and have tight rows of
    rank d^2 - 1. ``vertices`` overrides the conjectured list (for
    negative tests).
    """
    cds = cds or build_cd_inequalities(d)
    verts = list(vertices) if vertices is not None else conjectured_vertices(d).vertices
    ok = True
    counts, tights, ranks = [], [], []
    for v in verts:
        vals, den = _scaled_values(cds, v)
        ones = int(np.sum(vals == den))
        twos = int(np.sum(vals == 2 * den))
        other = len(vals) - ones - twos
        counts.append({1: ones, 2: twos, "other": other})
        tight_rows = cds.A[vals == den]
        tights.append(ones)
        full = bool(tight_rows.shape[0]) and has_full_column_rank(tight_rows)
        ranks.append(cds.dim if full else None)
        ok &= other == 0 and full
    return EasyDirectionReport(d, bool(ok), counts, tights, ranks)


def easy_direction_check(d: int, vertices=None) -> bool:
    return easy_direction_report(d, vertices).passed


@dataclass
class ConjectureReport:
    d: int
    backend: str
    enumerated_count: int
    conjectured_count: int
    equal: bool
    bounded: bool
    tight_counts: list
    missing: list
    extra: list
    vertices: list
    runtimes: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        fmt = lambda v: [f"{x.numerator}/{x.denominator}" for x in v]  # noqa: E731
        return {
            "d": self.d,
            "backend": self.backend,
            "enumerated_count": self.enumerated_count,
            "conjectured_count": self.conjectured_count,
            "equal": self.equal,
            "bounded": self.bounded,
            "tight_counts": self.tight_counts,
            "missing": [fmt(v) for v in self.missing],
            "extra": [fmt(v) for v in self.extra],
            "vertices": [fmt(v) for v in self.vertices],
            "runtimes": self.runtimes,
            "stats": self.stats,
        }


def verify_conjecture(d: int, backend: str = "dd", **enum_kwargs) -> ConjectureReport:
    """Enumerate C_d exactly and compare with the MUB vertex set.

    ``enum_kwargs`` (``order``, ``max_rays``, ``time_limit``,
    ``checkpoint``, ``n_threads``, ``progress``) go to
    :func:`vertex_enumeration`; exceeding a limit raises
    ``ResourceLimitError`` carrying the partial progress.
    """
    _check_d(d)
    runtimes = {}
    t = time.perf_counter()
    cds = build_cd_inequalities(d)
    runtimes["build"] = time.perf_counter() - t
    t = time.perf_counter()
    bounded = is_bounded(cds.h)
    runtimes["is_bounded"] = time.perf_counter() - t
    if not bounded:
        raise ArithmeticError(f"C_{d} came out unbounded")
    t = time.perf_counter()
    v = vertex_enumeration(cds.h, backend=backend, check_bounded=False, **enum_kwargs)
    runtimes["enumeration"] = time.perf_counter() - t
    t = time.perf_counter()
    conj = conjectured_vertices(d)
    equal, diff = polytope_equal(v, conj)
    runtimes["compare"] = time.perf_counter() - t
    tight = [int(np.sum(cds.h.slack_signs(x) == 0)) for x in v.vertices]
    return ConjectureReport(
        d, backend, len(v.vertices), len(conj.vertices), equal, bounded, tight,
        diff.missing, diff.extra, v.vertices, runtimes, v.stats or {},
    )


@dataclass
class MembershipVerdict:
    """Outcome of :func:`cd_membership`.

    OUT carries the violated tuple (1-based vector choices) and the exact
    violation ``1 - sum_i p_{i, j_i}``; it needs no conjecture. IN carries
    convex weights over the MUB vertices, which certify membership in C_d
    only given the conjecture for this d (``conditional_on_conjecture``).
    """

    d: int
    verdict: str
    mode: str
    point: tuple
    violated_tuple: tuple | None = None
    violation: Fraction | None = None
    weights: ConvexCombination | None = None
    labels: list | None = None
    conditional_on_conjecture: bool = False
    conjecture_verified: bool | None = None
    rationalization_error: float = 0.0
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "verdict": self.verdict,
            "mode": self.mode,
            "point": [f"{x.numerator}/{x.denominator}" for x in self.point],
            "conditional_on_conjecture": self.conditional_on_conjecture,
            "conjecture_verified": self.conjecture_verified,
            "rationalization_error": self.rationalization_error,
        }
        if self.violated_tuple is not None:
            out["violated_tuple"] = list(self.violated_tuple)
            out["violation"] = f"{self.violation.numerator}/{self.violation.denominator}"
            out["violation_float"] = float(self.violation)
        if self.weights is not None:
            out["weights"] = [
                {"vertex": list(lab), "weight": f"{w.numerator}/{w.denominator}"}
                for lab, (_, w) in zip(self.labels, self.weights.weights)
            ]
        if self.note:
            out["note"] = self.note
        return out


def _rationalize(p: PMatrix, max_denominator: int):
    d = p.d
    coords, err = [], 0.0
    for i in range(d + 1):
        for j in range(d - 1):
            x = float(p.p[i, j])
            r = Fraction(x).limit_denominator(max_denominator)
            err = max(err, abs(float(r) - x))
            coords.append(r)
    return coords, err


def _full_rows(d: int, coords) -> list:
    rows = []
    for i in range(d + 1):
        row = list(coords[i * (d - 1):(i + 1) * (d - 1)])
        rows.append(row + [1 - sum(row, Fraction(0))])
    return rows


def cd_membership(
    item,
    mode: str = "exact",
    tol: float = 1e-9,
    max_denominator: int = 10 ** 9,
    conjecture_verified: bool | None = None,
) -> MembershipVerdict:
    """Decide whether a probability table (or a state's table) lies in C_d.

    Parameters
    ----------
    item : PMatrix or DensityMatrix
        Exact mode needs a rational PMatrix. Float mode rationalizes the
        d^2 - 1 free coordinates with ``max_denominator``.
    mode : {"exact", "float"}
    tol : float
        Float mode only: violations up to ``tol`` are not reported as OUT.
    conjecture_verified : bool, optional
        Recorded on IN verdicts, which rely on the conjecture for this d.
    """
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")
    if isinstance(item, DensityMatrix):
        _check_d(item.d)
        item = p_matrix_from_state(item, build_mubs(field_spec(item.d)))
    if not isinstance(item, PMatrix):
        raise InvalidStateError("expected a PMatrix or DensityMatrix")
    d = item.d
    _check_d(d)
    if mode == "exact":
        if not item.exact:
            raise InvalidStateError("exact mode needs a rational PMatrix")
        coords = [to_fraction(x) for x in item.coordinates()]
        rerr = 0.0
    else:
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        if item.exact:
            coords, rerr = [to_fraction(x) for x in item.coordinates()], 0.0
        else:
            coords, rerr = _rationalize(item, max_denominator)
    rows = _full_rows(d, coords)
    if any(x < 0 for row in rows for x in row):
        raise InvalidStateError("probability table has a negative entry after rationalization")

    # the most violated inequality takes the smallest entry of every row
    choice = tuple(min(range(d), key=lambda j: (row[j], j)) + 1 for row in rows)
    violation = 1 - sum(row[j - 1] for row, j in zip(rows, choice))
    point = tuple(coords)
    threshold = 0 if mode == "exact" else tol
    if violation > threshold:
        return MembershipVerdict(d, "OUT", mode, point, choice, violation, rationalization_error=rerr)

    labels_by_vertex = conjectured_labels(d)
    verts = conjectured_vertices(d)
    if violation > 0:
        return MembershipVerdict(
            d, "IN", mode, point, conditional_on_conjecture=True, conjecture_verified=conjecture_verified,
            rationalization_error=rerr, violation=violation,
            note="violation within tolerance; no exact certificate",
        )
    cert = hull_membership(verts, point)
    if not isinstance(cert, ConvexCombination):
        raise ArithmeticError("point satisfies every C_d inequality but is outside the MUB hull")
    labels = [labels_by_vertex[verts.vertices[k]] for k, _ in cert.weights]
    return MembershipVerdict(
        d, "IN", mode, point, weights=cert, labels=labels, conditional_on_conjecture=True,
        conjecture_verified=conjecture_verified, rationalization_error=rerr,
    )
