"""Mutually unbiased bases built as eigenbases of generalized Pauli operators.

Basis order for prime d: bases 1..d are the eigenbases of X Z^k for
k = 0..d-1, basis d+1 is the computational (Z) basis. For d = 2 this is
the sigma_x, sigma_y, sigma_z order, with X Z rephased to the Hermitian
Y = i X Z. Vectors inside a basis follow the eigenvalue phase
omega^0, omega^1, ...; each vector's first nonzero amplitude is made real
and positive.

d = 4 uses the two-qubit Pauli partition into five commuting triples and
d = 9 the quadratic-form construction over GF(9).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDimensionError
from .gf import FieldSpec, field_spec, gf_elements, gf_trace

MUB_ORDERS = (2, 3, 4, 5, 7, 9)
STABILIZER_ORDERS = (2, 3, 4, 5, 7, 9)

_SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

TWO_QUBIT_TRIPLES = (
    ("ZI", "IZ", "ZZ"),
    ("XI", "IX", "XX"),
    ("YI", "IY", "YY"),
    ("XY", "YZ", "ZX"),
    ("XZ", "YX", "ZY"),
)


@dataclass
class PauliOperator:
    label: object
    matrix: np.ndarray


@dataclass
class Basis:
    index: int
    vectors: np.ndarray  # d x d, column j is |alpha_{i,j}>

    def projector(self, j: int) -> np.ndarray:
        v = self.vectors[:, j]
        return np.outer(v, v.conj())


@dataclass
class MubSet:
    spec: FieldSpec
    bases: list

    @property
    def d(self) -> int:
        return self.spec.d

    def projectors(self) -> np.ndarray:
        """Array P[i, j] = |alpha_{i,j}><alpha_{i,j}| (0-based indices)."""
        d = self.d
        out = np.empty((len(self.bases), d, d, d), dtype=complex)
        for i, b in enumerate(self.bases):
            for j in range(d):
                out[i, j] = b.projector(j)
        return out


def _shift_clock(d: int):
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)  # X|k> = |k+1>
    omega = np.exp(2j * np.pi / d)
    Z = np.diag(omega ** np.arange(d))
    return X, Z


def generalized_pauli(spec: FieldSpec, label) -> PauliOperator:
    """Matrix realization of a Pauli label.

    Prime d takes ``(a, b)`` for X^a Z^b. d = 4 takes a two-letter word over
    I, X, Y, Z. d = 9 takes ``((a1, b1), (a2, b2))`` for a two-qutrit tensor
    product.
    """
    d = spec.d
    if spec.n == 1:
        try:
            a, b = (int(t) for t in label)
        except (TypeError, ValueError):
            raise ValueError(f"prime d={d} expects an (a, b) label, got {label!r}") from None
        X, Z = _shift_clock(d)
        M = np.linalg.matrix_power(X, a % d) @ np.linalg.matrix_power(Z, b % d)
        return PauliOperator((a % d, b % d), M)
    if d == 4:
        if not (isinstance(label, str) and len(label) == 2 and set(label) <= set("IXYZ")):
            raise ValueError(f"d=4 expects a two-letter Pauli word, got {label!r}")
        return PauliOperator(label, np.kron(_SIGMA[label[0]], _SIGMA[label[1]]))
    if d == 9:
        (a1, b1), (a2, b2) = label
        X, Z = _shift_clock(3)
        P1 = np.linalg.matrix_power(X, a1 % 3) @ np.linalg.matrix_power(Z, b1 % 3)
        P2 = np.linalg.matrix_power(X, a2 % 3) @ np.linalg.matrix_power(Z, b2 % 3)
        return PauliOperator(((a1 % 3, b1 % 3), (a2 % 3, b2 % 3)), np.kron(P1, P2))
    raise UnsupportedDimensionError(d, STABILIZER_ORDERS)


def pauli_labels(spec: FieldSpec) -> list:
    """All d^2 candidate labels, identity first."""
    d = spec.d
    if spec.n == 1:
        return [(a, b) for a in range(d) for b in range(d)]
    if d == 4:
        return ["".join(w) for w in itertools.product("IXYZ", repeat=2)]
    if d == 9:
        return [((a1, b1), (a2, b2)) for a1, b1, a2, b2 in itertools.product(range(3), repeat=4)]
    raise UnsupportedDimensionError(d, STABILIZER_ORDERS)


def _fix_phase(vectors: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        col = col / np.linalg.norm(col)
        k = int(np.argmax(np.abs(col) > tol))
        col = col * (abs(col[k]) / col[k])
        out[:, j] = col
    return out


def _eigenbasis_by_phase(M: np.ndarray, d: int) -> np.ndarray:
    # eigenvalues are distinct d-th roots of unity; sort by exponent
    vals, vecs = np.linalg.eig(M)
    expo = np.round(np.angle(vals) / (2 * np.pi / d)).astype(int) % d
    if sorted(expo) != list(range(d)):
        raise ArithmeticError("operator spectrum is not the full set of d-th roots of unity")
    order = np.argsort(expo)
    vecs = vecs[:, order]
    # eigenvectors of distinct eigenvalues of a unitary are orthogonal; clean up rounding
    q, _ = np.linalg.qr(vecs)
    return _fix_phase(q)


def _prime_mubs(spec: FieldSpec) -> list:
    d = spec.d
    X, Z = _shift_clock(d)
    bases = []
    for k in range(d):
        M = X @ np.linalg.matrix_power(Z, k)
        if d == 2 and k == 1:
            M = 1j * M  # Y
        bases.append(_eigenbasis_by_phase(M, d))
    bases.append(np.eye(d, dtype=complex))
    return bases


def _two_qubit_mubs() -> list:
    bases = []
    for g1, g2, _ in TWO_QUBIT_TRIPLES:
        A = generalized_pauli(field_spec(4), g1).matrix
        B = generalized_pauli(field_spec(4), g2).matrix
        _, vecs = np.linalg.eigh(A + 2 * B)
        keyed = []
        for j in range(4):
            v = vecs[:, j]
            sa = int(np.sign(np.real(v.conj() @ A @ v)))
            sb = int(np.sign(np.real(v.conj() @ B @ v)))
            keyed.append(((-sa, -sb), j))
        order = [j for _, j in sorted(keyed)]
        bases.append(_fix_phase(vecs[:, order]))
    return bases


def _odd_prime_power_mubs(spec: FieldSpec) -> list:
    d, p = spec.d, spec.p
    els = gf_elements(spec)
    omega = np.exp(2j * np.pi / p)
    bases = []
    for a in els:
        B = np.empty((d, d), dtype=complex)
        for b in els:
            for x in els:
                B[x.index, b.index] = omega ** gf_trace(a * x * x + b * x) / np.sqrt(d)
        bases.append(_fix_phase(B))
    bases.append(np.eye(d, dtype=complex))
    return bases


def build_mubs(spec: FieldSpec) -> MubSet:
    d = spec.d
    if d not in MUB_ORDERS:
        raise UnsupportedDimensionError(d, MUB_ORDERS)
    if spec.n == 1:
        mats = _prime_mubs(spec)
    elif d == 4:
        mats = _two_qubit_mubs()
    else:
        mats = _odd_prime_power_mubs(spec)
    return MubSet(spec, [Basis(i + 1, M) for i, M in enumerate(mats)])


def check_orthonormal(m: MubSet) -> float:
    """Largest deviation of |<alpha_ij|alpha_il>|^2 from delta_jl."""
    d = m.d
    worst = 0.0
    for b in m.bases:
        G = np.abs(b.vectors.conj().T @ b.vectors) ** 2
        worst = max(worst, float(np.max(np.abs(G - np.eye(d)))))
    return worst


def check_unbiased(m: MubSet) -> float:
    """Largest deviation of cross-basis overlaps from 1/d."""
    d = m.d
    worst = 0.0
    for b1, b2 in itertools.combinations(m.bases, 2):
        G = np.abs(b1.vectors.conj().T @ b2.vectors) ** 2
        worst = max(worst, float(np.max(np.abs(G - 1.0 / d))))
    return worst


def check_complete(m: MubSet) -> float:
    """Largest deviation of sum_j |alpha_ij><alpha_ij| from the identity."""
    d = m.d
    worst = 0.0
    for b in m.bases:
        S = b.vectors @ b.vectors.conj().T
        worst = max(worst, float(np.max(np.abs(S - np.eye(d)))))
    return worst


def stabilizer_check(m: MubSet, tol: float = 1e-9) -> list:
    """Pauli labels diagonal in each basis (off-diagonal Frobenius norm <= tol)."""
    paulis = [generalized_pauli(m.spec, lab) for lab in pauli_labels(m.spec)]
    out = []
    for b in m.bases:
        V = b.vectors
        found = []
        for P in paulis:
            D = V.conj().T @ P.matrix @ V
            off = D - np.diag(np.diag(D))
            if np.linalg.norm(off) <= tol:
                found.append(P.label)
        out.append(found)
    return out


def mubs_to_json(m: MubSet) -> list:
    return [
        [[[float(z.real), float(z.imag)] for z in row] for row in b.vectors]
        for b in m.bases
    ]
