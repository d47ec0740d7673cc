"""Wigner functions of the phase-space/MUB construction.

A definition assigns each basis to a striation and each basis vector to a
line of that striation. Given the projection probabilities ``p[i, j]``,

    W(alpha) = (sum over the d+1 lines through alpha of p(assigned) - 1) / d.

Indices in the public API are 1-based where they name bases, vectors,
striations or lines (matching ``p_{i,j}``), and 0-based for array storage.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EnumerationCapError, InvalidStateError
from .mub import MubSet
from .phasespace import PhasePoint, StriationSet
from .polytope.rational import to_fraction
from .polytope.types import HPolytope

DEFAULT_CAP = 10 ** 6
QUBIT_T1 = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))
QUBIT_T2 = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


@dataclass
class DensityMatrix:
    """A d x d density matrix.

    Hermiticity and unit trace are enforced on construction (within
    ``tol``); positivity is only reported, since tomography of points
    outside the state space yields legitimate non-PSD matrices.
    """

    d: int
    entries: np.ndarray
    tol: float = 1e-10

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.d, self.d):
            raise InvalidStateError(f"expected a {self.d}x{self.d} matrix, got shape {self.entries.shape}")
        if not np.all(np.isfinite(self.entries)):
            raise InvalidStateError("matrix has non-finite entries")
        herm = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if herm > self.tol:
            raise InvalidStateError(f"matrix is not Hermitian (deviation {herm:.3g})")
        tr = complex(np.trace(self.entries))
        if abs(tr - 1) > self.tol:
            raise InvalidStateError(f"trace is {tr.real:.12g}, expected 1")

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min())

    def is_psd(self, tol: float = 1e-9) -> bool:
        return self.min_eigenvalue >= -tol

    def require_psd(self, tol: float = 1e-9) -> "DensityMatrix":
        if not self.is_psd(tol):
            raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {self.min_eigenvalue:.3g})")
        return self

    @classmethod
    def from_json(cls, obj, d: int | None = None) -> "DensityMatrix":
        """Parse a d x d nested list of ``[re, im]`` pairs (bare reals allowed)."""
        try:
            rows = [[complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z) for z in row] for row in obj]
        except (TypeError, ValueError, IndexError) as exc:
            raise InvalidStateError(f"malformed density matrix: {exc}") from None
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidStateError("density matrix is not square")
        if d is not None and n != d:
            raise InvalidStateError(f"density matrix is {n}x{n}, expected d={d}")
        return cls(n, np.array(rows))

    def to_json(self) -> list:
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]


def pure_state(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityMatrix(len(v), np.outer(v, v.conj()))


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(d, np.eye(d) / d)


def random_state(d: int, seed: int) -> DensityMatrix:
    """Normalized ``G G^dagger`` for a seeded complex Gaussian ``G``."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(d, rho / np.trace(rho).real)


@dataclass
class PMatrix:
    """The (d+1) x d table ``p[i-1, j-1] = p_{i,j}``.

    With ``exact=True`` entries are Fractions (object array) and rows sum
    to exactly 1; otherwise floats with rows summing to 1 within 1e-10.
    """

    d: int
    p: np.ndarray
    exact: bool = False

    def __post_init__(self):
        d = self.d
        if self.exact:
            self.p = np.array([[to_fraction(x) for x in row] for row in self.p], dtype=object)
        else:
            self.p = np.asarray(self.p, dtype=float)
        if self.p.shape != (d + 1, d):
            raise InvalidStateError(f"expected a {(d + 1, d)} probability table, got {self.p.shape}")
        if self.exact:
            for i, row in enumerate(self.p):
                if sum(row) != 1:
                    raise InvalidStateError(f"row {i + 1} sums to {sum(row)}, expected exactly 1")
                if any(x < 0 or x > 1 for x in row):
                    raise InvalidStateError(f"row {i + 1} has an entry outside [0, 1]")
        else:
            if not np.all(np.isfinite(self.p)):
                raise InvalidStateError("probability table has non-finite entries")
            if np.any(self.p < -1e-10) or np.any(self.p > 1 + 1e-10):
                raise InvalidStateError("probability outside [0, 1]")
            dev = np.abs(self.p.sum(axis=1) - 1)
            if np.any(dev > 1e-10):
                raise InvalidStateError(f"row sums deviate from 1 by up to {dev.max():.3g}")

    @classmethod
    def from_rows(cls, rows) -> "PMatrix":
        """Build from nested rows; exact if every entry is an int, Fraction or string."""
        rows = [list(r) for r in rows]
        exact = all(isinstance(x, (int, Fraction, str)) for r in rows for x in r)
        return cls(len(rows[0]), rows if exact else np.array(rows, dtype=float), exact=exact)

    def coordinates(self) -> tuple:
        """The d^2 - 1 independent entries ``p_{i,j}``, j < d, basis-major."""
        return tuple(self.p[i, j] for i in range(self.d + 1) for j in range(self.d - 1))

    def to_float(self) -> np.ndarray:
        return self.p.astype(float)


@dataclass(frozen=True)
class WignerDefinition:
    """Assignment of bases to striations and vectors to lines.

    ``striation_perm[i-1]`` is the striation of basis ``i``;
    ``line_perms[i-1][j-1]`` is the line (within that striation) of vector
    ``j`` of basis ``i``. All values are 1-based.
    """

    d: int
    striation_perm: tuple
    line_perms: tuple

    def __post_init__(self):
        d = self.d
        sp = tuple(int(x) for x in self.striation_perm)
        lp = tuple(tuple(int(x) for x in perm) for perm in self.line_perms)
        object.__setattr__(self, "striation_perm", sp)
        object.__setattr__(self, "line_perms", lp)
        if sorted(sp) != list(range(1, d + 2)):
            raise ValueError(f"striation_perm {sp} is not a bijection on 1..{d + 1}")
        if len(lp) != d + 1:
            raise ValueError(f"need {d + 1} line permutations, got {len(lp)}")
        for perm in lp:
            if sorted(perm) != list(range(1, d + 1)):
                raise ValueError(f"line permutation {perm} is not a bijection on 1..{d}")

    @classmethod
    def canonical(cls, d: int) -> "WignerDefinition":
        ident = tuple(range(1, d + 1))
        return cls(d, tuple(range(1, d + 2)), (ident,) * (d + 1))

    def inverse(self) -> dict:
        """Map ``(striation, line) -> (basis, vector)``."""
        out = {}
        for i, s in enumerate(self.striation_perm, start=1):
            for j, ln in enumerate(self.line_perms[i - 1], start=1):
                out[(s, ln)] = (i, j)
        return out

    def to_json(self) -> dict:
        return {"d": self.d, "striation_perm": list(self.striation_perm), "line_perms": [list(p) for p in self.line_perms]}


@dataclass
class WignerTable:
    """``W[q.index, p.index]``; float, or Fractions when computed from an exact PMatrix."""

    d: int
    W: np.ndarray
    exact: bool = False

    def at(self, alpha: PhasePoint):
        return self.W[alpha.q.index, alpha.p.index]

    @property
    def total(self):
        return sum(self.W.flat) if self.exact else float(self.W.sum())

    def negativity(self) -> dict:
        vals = [float(x) for x in self.W.flat]
        return {"min_entry": min(vals), "sum_negative": sum(v for v in vals if v < 0)}

    def to_json(self) -> list:
        if self.exact:
            return [[f"{x.numerator}/{x.denominator}" for x in row] for row in self.W]
        return [[float(x) for x in row] for row in self.W]


def definition_count(d: int) -> int:
    return math.factorial(d + 1) * math.factorial(d) ** (d + 1)


def enumerate_definitions(d: int, cap: int = DEFAULT_CAP):
    """Every definition once, lexicographic in (striation_perm, line_perms).

    Raises
    ------
    EnumerationCapError
        When the count (d+1)! (d!)^(d+1) exceeds ``cap``.
    """
    n = definition_count(d)
    if n > cap:
        raise EnumerationCapError(f"{n} definitions for d={d} exceed the cap of {cap}")
    line_perms = list(itertools.permutations(range(1, d + 1)))
    for sp in itertools.permutations(range(1, d + 2)):
        for lps in itertools.product(line_perms, repeat=d + 1):
            yield WignerDefinition(d, sp, lps)


def _check_dims(p: PMatrix, defn: WignerDefinition, s: StriationSet):
    if not (p.d == defn.d == s.d):
        raise ValueError(f"dimension mismatch: p has d={p.d}, definition d={defn.d}, striations d={s.d}")


def p_matrix_from_state(rho: DensityMatrix, m: MubSet, tol: float = 1e-10) -> PMatrix:
    """``p_{i,j} = Tr(|alpha_ij><alpha_ij| rho)``."""
    if rho.d != m.d:
        raise ValueError(f"state has d={rho.d}, MUBs have d={m.d}")
    d = m.d
    out = np.empty((d + 1, d))
    for i, b in enumerate(m.bases):
        V = b.vectors
        vals = np.einsum("ki,kl,li->i", V.conj(), rho.entries, V)
        if np.max(np.abs(vals.imag)) > tol:
            raise InvalidStateError("complex projection probability; state is not Hermitian")
        out[i] = vals.real
    return PMatrix(d, out)


def wigner_from_p(p: PMatrix, defn: WignerDefinition, s: StriationSet) -> WignerTable:
    _check_dims(p, defn, s)
    d = p.d
    inv = defn.inverse()
    through = s.through_table()
    W = np.empty((d, d), dtype=object if p.exact else float)
    for (qi, pi), lines in through.items():
        total = Fraction(0) if p.exact else 0.0
        for k, ln in enumerate(lines):
            i, j = inv[(s.striations[k].index, ln)]
            total += p.p[i - 1, j - 1]
        W[qi, pi] = (total - 1) / d
    return WignerTable(d, W, exact=p.exact)


def line_sum_check(w: WignerTable, defn: WignerDefinition, s: StriationSet, p: PMatrix) -> float:
    """Largest |sum of W over a line - p(assigned vector)| over all lines."""
    _check_dims(p, defn, s)
    inv = defn.inverse()
    worst = 0.0
    for st in s.striations:
        for ln in st.lines:
            i, j = inv[(st.index, ln.line_index)]
            total = sum(w.at(pt) for pt in ln.points)
            worst = max(worst, abs(float(total - p.p[i - 1, j - 1])))
    return worst


def qubit_closed_form(p: PMatrix) -> WignerTable:
    """The four explicit qubit formulas (bases x, y, z; rows q, columns p)."""
    if p.d != 2:
        raise ValueError("closed form exists for d = 2 only")
    P = p.p
    half = Fraction(1, 2) if p.exact else 0.5
    W = np.empty((2, 2), dtype=object if p.exact else float)
    W[0, 0] = half * (P[0, 0] + P[1, 0] + P[2, 0] - 1)
    W[0, 1] = half * (P[0, 0] + P[1, 1] + P[2, 1] - 1)
    W[1, 0] = half * (P[0, 1] + P[1, 0] + P[2, 1] - 1)
    W[1, 1] = half * (P[0, 1] + P[1, 1] + P[2, 0] - 1)
    return WignerTable(2, W, exact=p.exact)


def phase_point_operator(alpha: PhasePoint, defn: WignerDefinition, s: StriationSet, m: MubSet) -> np.ndarray:
    """``A_alpha = sum of the projectors on lines through alpha - I``; ``W = Tr(rho A)/d``."""
    if not (defn.d == s.d == m.d):
        raise ValueError("dimension mismatch")
    inv = defn.inverse()
    lines = s.through_table()[alpha.index]
    A = -np.eye(m.d, dtype=complex)
    for k, ln in enumerate(lines):
        i, j = inv[(s.striations[k].index, ln)]
        A += m.bases[i - 1].projector(j - 1)
    return A


def state_from_p(p: PMatrix, m: MubSet) -> DensityMatrix:
    """MUB tomography: ``rho = sum p_ij |alpha_ij><alpha_ij| - I``. Positivity is not enforced."""
    if p.d != m.d:
        raise ValueError("dimension mismatch")
    P = p.to_float()
    rho = -np.eye(m.d, dtype=complex)
    for i, b in enumerate(m.bases):
        V = b.vectors
        rho += (V * P[i]) @ V.conj().T
    return DensityMatrix(m.d, rho, tol=1e-9)


def qubit_inequalities(defn: WignerDefinition, s: StriationSet) -> HPolytope:
    """The four conditions W >= 0 in the coordinates (p_{1,1}, p_{2,1}, p_{3,1}).

    Rows are scaled to coprime integers and sorted, so equal polytopes from
    different definitions give identical systems.
    """
    if defn.d != 2:
        raise ValueError("qubit inequalities need d = 2")
    inv = defn.inverse()
    rows = set()
    for lines in s.through_table().values():
        a = [0, 0, 0]
        const = 0
        for k, ln in enumerate(lines):
            i, j = inv[(s.striations[k].index, ln)]
            if j == 1:
                a[i - 1] += 1
            else:  # p_{i,2} = 1 - p_{i,1}
                a[i - 1] -= 1
                const += 1
        rows.add((tuple(a), 1 - const))
    return HPolytope(3, sorted(rows))


@dataclass
class QubitClass:
    label: str
    inequalities: HPolytope
    vertices: list
    definitions: list = field(default_factory=list)


@dataclass
class QubitClassification:
    classes: list
    assignment: dict  # WignerDefinition -> class label

    @property
    def counts(self) -> dict:
        return {c.label: len(c.definitions) for c in self.classes}


def classify_qubit_definitions(s: StriationSet) -> QubitClassification:
    """Group the 48 qubit definitions by their non-negativity polytope.

    Classes whose vertex set is T1 or T2 are labeled so; anything else
    (never expected) gets a numbered label.
    """
    from .polytope.ops import vertex_enumeration

    if s.d != 2:
        raise ValueError("classification is defined for d = 2 only")
    groups = {}
    for defn in enumerate_definitions(2):
        h = qubit_inequalities(defn, s)
        key = tuple(h.inequalities)
        groups.setdefault(key, (h, []))[1].append(defn)
    classes, assignment = [], {}
    t1 = {tuple(Fraction(x) for x in v) for v in QUBIT_T1}
    t2 = {tuple(Fraction(x) for x in v) for v in QUBIT_T2}
    for n, (h, defs) in enumerate(groups.values()):
        verts = vertex_enumeration(h).vertices
        vs = set(verts)
        label = "T1" if vs == t1 else "T2" if vs == t2 else f"class{n + 1}"
        classes.append(QubitClass(label, h, verts, defs))
        for dfn in defs:
            assignment[dfn] = label
    classes.sort(key=lambda c: c.label)
    return QubitClassification(classes, assignment)
