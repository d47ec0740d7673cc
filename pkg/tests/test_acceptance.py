"""Acceptance criteria 1-11, each at its stated tolerance and time budget.

A pass/fail line per criterion is printed in the terminal summary.
"""
import time
from fractions import Fraction as F

import numpy as np
import pytest

from mubwigner.cd import (
    build_cd_inequalities,
    cd_membership,
    conjectured_vertices,
    easy_direction_report,
    verify_conjecture,
)
from mubwigner.gf import field_spec
from mubwigner.mub import MUB_ORDERS, build_mubs, check_orthonormal, check_unbiased, stabilizer_check
from mubwigner.phasespace import build_striations, verify_striation_properties
from mubwigner.polytope import HPolytope, vertex_enumeration
from mubwigner.errors import UnboundedPolytopeError
from mubwigner.wigner import (
    DensityMatrix,
    PMatrix,
    WignerDefinition,
    classify_qubit_definitions,
    line_sum_check,
    maximally_mixed,
    p_matrix_from_state,
    pure_state,
    qubit_closed_form,
    random_state,
    state_from_p,
    wigner_from_p,
)

from oracles import brute_force_vertices, random_h_system, rank

T1 = {(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)}
T2 = {(1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 0)}
H = F(1, 2)
OCTAHEDRON = {(1, H, H), (0, H, H), (H, 1, H), (H, 0, H), (H, H, 1), (H, H, 0)}


def _as_set(vertices):
    return {tuple(F(x) for x in v) for v in vertices}


def _mub_state_points(d):
    """Probability coordinates of every MUB vector, computed from the vectors themselves."""
    m = build_mubs(field_spec(d))
    pts = set()
    for basis in m.bases:
        for j in range(d):
            p = p_matrix_from_state(pure_state(basis.vectors[:, j]), m).to_float()
            pts.add(tuple(F(round(x * d)) / d for x in p[:, : d - 1].ravel()))
    return pts


@pytest.mark.criterion(1, "qubit classification: 48 definitions -> T1, T2 exactly (< 1 s)")
def test_criterion_01_qubit_classification():
    t = time.perf_counter()
    res = classify_qubit_definitions(build_striations(field_spec(2)))
    elapsed = time.perf_counter() - t
    assert len(res.classes) == 2
    found = {frozenset(_as_set(c.vertices)) for c in res.classes}
    assert found == {frozenset(_as_set(T1)), frozenset(_as_set(T2))}
    assert sum(res.counts.values()) == 48
    assert len(res.assignment) == 48
    assert elapsed < 1.0


@pytest.mark.criterion(2, "C_2 octahedron: 8 inequalities -> the 6 listed vertices (< 1 s)")
def test_criterion_02_octahedron():
    t = time.perf_counter()
    cds = build_cd_inequalities(2)
    v = vertex_enumeration(cds.h)
    elapsed = time.perf_counter() - t
    assert len(cds.h.inequalities) == 8
    assert set(v.vertices) == OCTAHEDRON
    assert elapsed < 1.0


@pytest.mark.criterion(3, "C_3: 81 inequalities, dim 8 -> 12 conjectured vertices (< 30 s)")
def test_criterion_03_c3():
    t = time.perf_counter()
    rep = verify_conjecture(3)
    elapsed = time.perf_counter() - t
    assert len(build_cd_inequalities(3).h.inequalities) == 81
    assert rep.enumerated_count == 12
    assert rep.equal
    assert set(rep.vertices) == set(conjectured_vertices(3).vertices) == _mub_state_points(3)
    assert elapsed < 30


@pytest.mark.criterion(4, "C_4: 1024 inequalities, dim 15 -> 20 vertices (< 15 min)")
def test_criterion_04_c4():
    t = time.perf_counter()
    rep = verify_conjecture(4)
    elapsed = time.perf_counter() - t
    assert len(build_cd_inequalities(4).h.inequalities) == 1024
    assert rep.enumerated_count == 20
    assert rep.equal
    assert set(rep.vertices) == _mub_state_points(4)
    assert elapsed < 15 * 60


@pytest.mark.slow
@pytest.mark.criterion(5, "C_5: 15625 inequalities, dim 24 -> 30 vertices (< 12 h, checkpointed)")
def test_criterion_05_c5(tmp_path):
    t = time.perf_counter()
    rep = verify_conjecture(5, checkpoint=str(tmp_path / "c5.npz"), time_limit=12 * 3600)
    elapsed = time.perf_counter() - t
    print(f"C_5 runtimes: {rep.runtimes}")
    assert len(build_cd_inequalities(5).h.inequalities) == 15625
    assert rep.enumerated_count == 30
    assert rep.equal
    assert set(rep.vertices) == _mub_state_points(5)
    assert elapsed < 12 * 3600


@pytest.mark.criterion(6, "easy direction d = 2..5: values 1 or 2, tight rank d^2 - 1 (< 1 min)")
def test_criterion_06_easy_direction():
    t = time.perf_counter()
    for d in (2, 3, 4, 5):
        rep = easy_direction_report(d)
        assert rep.passed, d
        assert all(c["other"] == 0 for c in rep.value_counts)
        assert rep.tight_ranks == [d * d - 1] * (d * (d + 1))
        assert rep.tight_counts == [(d - 1) * d ** d] * (d * (d + 1))
    assert time.perf_counter() - t < 60
    # independent rank for the small cases
    for d in (2, 3):
        cds = build_cd_inequalities(d)
        for v in conjectured_vertices(d).vertices:
            tight = [a for a, b in cds.h.inequalities if sum(x * y for x, y in zip(a, v)) == b]
            assert rank(tight, d * d - 1) == d * d - 1


@pytest.mark.criterion(7, "striation properties i-iii, d in {2,3,4,5,7,8,9} (< 1 min)")
def test_criterion_07_striations():
    t = time.perf_counter()
    for d in (2, 3, 4, 5, 7, 8, 9):
        s = build_striations(field_spec(d))
        assert len(s.striations) == d + 1
        assert verify_striation_properties(s).all_hold, d
    assert time.perf_counter() - t < 60


@pytest.mark.criterion(8, "MUB deviations <= 1e-10; d stabilizer Paulis per basis")
def test_criterion_08_mub_quality():
    for d in MUB_ORDERS:
        m = build_mubs(field_spec(d))
        assert len(m.bases) == d + 1
        assert check_unbiased(m) <= 1e-10
        assert check_orthonormal(m) <= 1e-10
    for d in (2, 3, 4, 5, 7):
        stab = stabilizer_check(build_mubs(field_spec(d)))
        assert len(stab) == d + 1
        assert all(len(labels) == d for labels in stab), d


@pytest.mark.criterion(9, "Wigner invariants on 100 seeded random states per d in {2,3,5}")
def test_criterion_09_wigner_invariants():
    for d in (2, 3, 5):
        spec = field_spec(d)
        m, s = build_mubs(spec), build_striations(spec)
        defn = WignerDefinition.canonical(d)
        prev = None
        for seed in range(100):
            rho = random_state(d, seed=1000 * d + seed)
            p = p_matrix_from_state(rho, m)
            w = wigner_from_p(p, defn, s)
            assert abs(w.total - 1) <= 1e-9
            assert line_sum_check(w, defn, s, p) <= 1e-9
            if d == 2:
                assert np.max(np.abs(qubit_closed_form(p).W - w.W)) <= 1e-12
            back = state_from_p(p, m)
            assert np.max(np.abs(back.entries - rho.entries)) <= 1e-8
            if prev is not None:
                rho2, w2 = prev
                overlap = np.real(np.trace(rho.entries @ rho2.entries))
                assert abs(overlap - d * np.sum(w.W * w2.W)) <= 1e-8
            prev = (rho, w)


@pytest.mark.criterion(10, "membership: maximally mixed IN (uniform), Bloch (1,1,1)/sqrt3 OUT (2,2,2)")
def test_criterion_10_membership():
    for d in (2, 3, 4):
        n = d * (d + 1)
        exact = PMatrix.from_rows([[F(1, d)] * d for _ in range(d + 1)])
        for item, mode in ((exact, "exact"), (maximally_mixed(d), "float")):
            v = cd_membership(item, mode=mode)
            assert v.verdict == "IN"
            assert len(v.weights.weights) == n
            assert all(w == F(1, n) for _, w in v.weights.weights)
    nvec = np.ones(3) / np.sqrt(3)
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    rho = 0.5 * (np.eye(2) + sum(c * s for c, s in zip(nvec, paulis)))
    v = cd_membership(DensityMatrix(2, rho), mode="float")
    assert v.verdict == "OUT"
    assert tuple(v.violated_tuple) == (2, 2, 2)
    expected = 1 - 3 * (1 - 1 / np.sqrt(3)) / 2
    assert abs(float(v.violation) - expected) <= 1e-9


@pytest.mark.criterion(11, "engine vs brute-force tight-subset oracle, 200 random systems (< 2 min)")
@pytest.mark.parametrize("backend", ["dd", "pivot"])
def test_criterion_11_oracle_equivalence(backend):
    rng = np.random.default_rng(20240611)
    t = time.perf_counter()
    seen = {}
    for _ in range(200):
        A, b = random_h_system(rng, max_dim=4, max_rows=10, coef=3)
        status, verts = brute_force_vertices(A, b)
        seen[status] = seen.get(status, 0) + 1
        h = HPolytope.from_arrays(A, b)
        if status == "unbounded":
            with pytest.raises(UnboundedPolytopeError):
                vertex_enumeration(h, backend=backend)
            continue
        v = vertex_enumeration(h, backend=backend)
        assert v.infeasible == (status == "infeasible")
        assert v.vertices == verts
    assert time.perf_counter() - t < 120
    # the generator must exercise all three outcomes
    assert set(seen) == {"bounded", "infeasible", "unbounded"}
