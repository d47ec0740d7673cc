"""Discrete d x d phase space, its lines, and the d+1 striations.

Points carry field coordinates ``(q, p)``. A Wigner table is stored as an
array ``W[q.index, p.index]``, so the vertical striation (``q`` fixed)
shows up as the rows of that array.

Striation order is fixed: the vertical striation first, then the slope
striations ``p = s*q + c`` with ``s`` in canonical field order. Within a
striation, line ``j`` (1-based) has intercept index ``j - 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import FieldSpec, GfElement, gf_elements


@dataclass(frozen=True, eq=False)
class PhasePoint:
    q: GfElement
    p: GfElement

    @property
    def index(self) -> tuple:
        return (self.q.index, self.p.index)

    def __hash__(self):
        return hash(self.index)

    def __eq__(self, other):
        return isinstance(other, PhasePoint) and self.index == other.index and self.q.spec == other.q.spec

    def __lt__(self, other):
        return self.index < other.index

    def __repr__(self):
        return f"PhasePoint{self.index}"


@dataclass(frozen=True)
class Line:
    striation_index: int
    line_index: int
    points: frozenset

    @property
    def key(self) -> tuple:
        return (self.striation_index, self.line_index)

    def __contains__(self, pt):
        return pt in self.points


@dataclass(frozen=True)
class Striation:
    index: int
    lines: tuple


@dataclass
class StriationSet:
    """The full collection of striations over one field.

    The constructor does not validate properties i-iii; use
    :func:`verify_striation_properties` for that.
    """

    spec: FieldSpec
    striations: list

    def __post_init__(self):
        self._through = None

    @property
    def d(self) -> int:
        return self.spec.d

    def points(self) -> list:
        els = gf_elements(self.spec)
        return [PhasePoint(q, p) for q in els for p in els]

    def all_lines(self) -> list:
        return [ln for s in self.striations for ln in s.lines]

    def point(self, q: int, p: int) -> PhasePoint:
        return PhasePoint(self.spec.element(q), self.spec.element(p))

    def through_table(self) -> dict:
        """Map point index -> tuple of line_index (1-based) per striation.

        Entries are None when a point lies on no line of a striation and the
        first hit is kept when it lies on several; both only happen for
        malformed sets.
        """
        if self._through is None:
            table = {}
            for pt in self.points():
                table[pt.index] = [None] * len(self.striations)
            for k, s in enumerate(self.striations):
                for ln in s.lines:
                    for pt in ln.points:
                        row = table.setdefault(pt.index, [None] * len(self.striations))
                        if row[k] is None:
                            row[k] = ln.line_index
            self._through = {key: tuple(v) for key, v in table.items()}
        return self._through


def build_striations(spec: FieldSpec) -> StriationSet:
    els = gf_elements(spec)
    striations = []
    vertical = tuple(
        Line(1, c.index + 1, frozenset(PhasePoint(c, p) for p in els)) for c in els
    )
    striations.append(Striation(1, vertical))
    for k, s in enumerate(els):
        idx = k + 2
        lines = tuple(
            Line(idx, c.index + 1, frozenset(PhasePoint(q, s * q + c) for q in els))
            for c in els
        )
        striations.append(Striation(idx, lines))
    return StriationSet(spec, striations)


@dataclass
class PropertyReport:
    """Outcome of the exhaustive striation checks.

    Each ``*_counterexample`` is None when the property holds.
    """

    unique_line: bool
    unique_parallel: bool
    unique_intersection: bool
    unique_line_counterexample: tuple = None
    unique_parallel_counterexample: tuple = None
    unique_intersection_counterexample: tuple = None
    partition_ok: bool = True

    @property
    def all_hold(self) -> bool:
        return self.unique_line and self.unique_parallel and self.unique_intersection and self.partition_ok

    def to_json(self) -> dict:
        def fmt(ce):
            if ce is None:
                return None
            return [list(x.index) if isinstance(x, PhasePoint) else list(x) for x in ce]

        return {
            "i_unique_line": self.unique_line,
            "ii_unique_parallel": self.unique_parallel,
            "iii_unique_intersection": self.unique_intersection,
            "partition": self.partition_ok,
            "counterexamples": {
                "i": fmt(self.unique_line_counterexample),
                "ii": fmt(self.unique_parallel_counterexample),
                "iii": fmt(self.unique_intersection_counterexample),
            },
        }


def verify_striation_properties(sset: StriationSet) -> PropertyReport:
    """Check properties i-iii by exhaustive enumeration."""
    d = sset.d
    points = sset.points()
    lines = sset.all_lines()

    partition_ok = len(sset.striations) == d + 1
    everything = frozenset(points)
    for s in sset.striations:
        seen = set()
        for ln in s.lines:
            if len(ln.points) != d or seen & ln.points:
                partition_ok = False
            seen |= ln.points
        if seen != everything or len(s.lines) != d:
            partition_ok = False

    ce_i = None
    for a, b in itertools.combinations(points, 2):
        n_common = sum(1 for ln in lines if a in ln.points and b in ln.points)
        if n_common != 1:
            ce_i = (a, b)
            break

    ce_ii = None
    for alpha in points:
        for s in sset.striations:
            for ln in s.lines:
                if alpha in ln.points:
                    continue
                n_par = sum(1 for other in s.lines if alpha in other.points)
                if n_par != 1:
                    ce_ii = (alpha, ln.key)
                    break
            if ce_ii:
                break
        if ce_ii:
            break

    ce_iii = None
    for s1, s2 in itertools.combinations(sset.striations, 2):
        for l1 in s1.lines:
            for l2 in s2.lines:
                if len(l1.points & l2.points) != 1:
                    ce_iii = (l1.key, l2.key)
                    break
            if ce_iii:
                break
        if ce_iii:
            break

    return PropertyReport(
        unique_line=ce_i is None,
        unique_parallel=ce_ii is None,
        unique_intersection=ce_iii is None,
        unique_line_counterexample=ce_i,
        unique_parallel_counterexample=ce_ii,
        unique_intersection_counterexample=ce_iii,
        partition_ok=partition_ok,
    )


def lines_through(alpha: PhasePoint, sset: StriationSet) -> list:
    """(striation_index, line_index) for each striation, in striation order."""
    if alpha.q.spec != sset.spec or alpha.p.spec != sset.spec:
        raise ValueError(f"{alpha} is not a point of this phase space")
    out = []
    for s in sset.striations:
        hits = [ln.line_index for ln in s.lines if alpha in ln.points]
        if len(hits) != 1:
            raise ValueError(f"{alpha} lies on {len(hits)} lines of striation {s.index}")
        out.append((s.index, hits[0]))
    return out


def striations_to_json(sset: StriationSet) -> dict:
    return {
        "d": sset.d,
        "field": sset.spec.to_json(),
        "striations": [
            [[list(pt.index) for pt in sorted(ln.points)] for ln in s.lines]
            for s in sset.striations
        ],
    }
