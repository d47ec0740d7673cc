from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from mubwigner.cd import build_cd_inequalities, conjectured_vertices
from mubwigner.errors import DegenerateHullError, UnboundedPolytopeError
from mubwigner.polytope import (
    ConvexCombination,
    HPolytope,
    SeparatingHyperplane,
    VPolytope,
    affine_hull,
    facet_enumeration,
    h_contains,
    h_equal,
    hull_membership,
    implies,
    is_bounded,
    polytope_equal,
    remove_redundant,
    vertex_enumeration,
)

from oracles import brute_force_vertices, random_h_system

H = F(1, 2)


def _square():
    return HPolytope.from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [0, 0, -1, -1])


def _octahedron_v():
    return VPolytope(3, [(1, H, H), (0, H, H), (H, 1, H), (H, 0, H), (H, H, 1), (H, H, 0)])


@pytest.mark.parametrize("backend", ["dd", "pivot"])
def test_square(backend):
    v = vertex_enumeration(_square(), backend=backend)
    assert v.vertices == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert v.stats["backend"] == backend


def test_boundedness():
    assert is_bounded(_square())
    assert not is_bounded(HPolytope.from_arrays([[1, 0], [0, 1]], [0, 0]))
    assert is_bounded(HPolytope.from_arrays([[1], [-1]], [1, 0]))  # empty
    with pytest.raises(UnboundedPolytopeError):
        vertex_enumeration(HPolytope.from_arrays([[1, 0], [0, 1]], [0, 0]))
    with pytest.raises(ValueError):
        vertex_enumeration(_square(), backend="simplex")


def test_infeasible():
    v = vertex_enumeration(HPolytope.from_arrays([[1, 1], [-1, -1], [1, 0], [0, 1]], [2, -1, 0, 0]))
    assert v.infeasible and v.vertices == []


@pytest.mark.parametrize("backend", ["dd", "pivot"])
def test_equality_constrained_simplex(backend):
    h = HPolytope(3, [([1, 0, 0], 0), ([0, 1, 0], 0), ([0, 0, 1], 0)], [([1, 1, 1], 1)])
    v = vertex_enumeration(h, backend=backend)
    assert v.vertices == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_single_point_and_segment():
    pt = HPolytope.from_arrays([[1, 0], [-1, 0], [0, 1], [0, -1]], [F(1, 3), F(-1, 3), 2, -2])
    assert vertex_enumeration(pt).vertices == [(F(1, 3), 2)]
    seg = HPolytope(2, [([1, 0], 0), ([-1, 0], -1)], [([1, -1], 0)])
    assert vertex_enumeration(seg).vertices == [(0, 0), (1, 1)]


@pytest.mark.parametrize("backend", ["dd", "pivot"])
def test_octahedron_from_cd(backend):
    v = vertex_enumeration(build_cd_inequalities(2).h, backend=backend)
    assert v.vertices == _octahedron_v().vertices


@pytest.mark.parametrize("backend", ["dd", "pivot"])
def test_c3_backends(backend):
    v = vertex_enumeration(build_cd_inequalities(3).h, backend=backend)
    assert v.vertices == conjectured_vertices(3).vertices


@pytest.mark.parametrize("seed", range(5))
def test_random_systems_small_sample(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        A, b = random_h_system(rng, max_dim=3, max_rows=8, coef=2)
        status, verts = brute_force_vertices(A, b)
        h = HPolytope.from_arrays(A, b)
        if status == "unbounded":
            assert not is_bounded(h)
            continue
        assert vertex_enumeration(h).vertices == verts


def test_facets_of_octahedron():
    h = facet_enumeration(_octahedron_v())
    assert len(h.inequalities) == 8
    assert h_equal(h, build_cd_inequalities(2).h)
    # every facet holds on all vertices, with at least 3 tight
    for a, b in h.inequalities:
        vals = [sum(x * y for x, y in zip(a, v)) for v in _octahedron_v().vertices]
        assert min(vals) == b
        assert sum(1 for t in vals if t == b) == 3
        assert all(isinstance(x, F) and x.denominator == 1 for x in a)


def test_facet_round_trip_cube():
    cube = VPolytope(3, list(product((0, 2), repeat=3)))
    h = facet_enumeration(cube)
    assert len(h.inequalities) == 6
    assert vertex_enumeration(h).vertices == cube.vertices


def test_degenerate_hull():
    flat = VPolytope(3, [(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    with pytest.raises(DegenerateHullError) as info:
        facet_enumeration(flat)
    assert info.value.affine_hull == [((0, 0, 1), 1)]
    with pytest.raises(DegenerateHullError):
        facet_enumeration(VPolytope(2, []))


def test_affine_hull():
    assert affine_hull([(0, 0), (1, 1)], 2) == [((-1, 1), 0)]
    assert affine_hull([(0, 0), (1, 0), (0, 1)], 2) == []


def test_hull_membership():
    oct_v = _octahedron_v()
    c = hull_membership(oct_v, (H, H, H))
    assert isinstance(c, ConvexCombination)
    assert all(w == F(1, 6) for _, w in c.weights) and len(c.weights) == 6
    assert c.point(oct_v.vertices) == (H, H, H)
    c = hull_membership(oct_v, (1, H, H))
    assert c.weights == [(oct_v.vertices.index((1, H, H)), 1)]
    x = (F(1, 2) + F(1, 2) / 3 ** 0.5,) * 3
    s = hull_membership(oct_v, [F(t).limit_denominator(10 ** 6) for t in x])
    assert isinstance(s, SeparatingHyperplane)
    assert s.margin > 0
    assert all(s.value(v) >= 0 for v in oct_v.vertices)
    with pytest.raises(ValueError):
        hull_membership(oct_v, (0, 0))


def test_remove_redundant():
    h = HPolytope.from_arrays(
        [[1, 0], [0, 1], [-1, 0], [0, -1], [2, 0], [1, 1]], [0, 0, -1, -1, -1, -5]
    )
    out, rep = remove_redundant(h)
    assert rep.counts == {"kept": 4, "removed": 2}
    assert h_equal(out, h)
    for i in rep.removed:
        assert rep.certificates[i].optimal


def test_cd2_inequalities_are_facets():
    out, rep = remove_redundant(build_cd_inequalities(2).h)
    assert rep.counts == {"kept": 8, "removed": 0}


def test_implication_and_containment():
    sq = _square()
    assert implies(sq, [1, 1], 0)
    assert not implies(sq, [1, 1], 1)
    half = HPolytope.from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [0, 0, -H, -H])
    assert h_contains(sq, half)
    assert not h_contains(half, sq)
    assert not h_equal(sq, half)
    empty = HPolytope.from_arrays([[1, 0], [-1, 0]], [1, 0])
    assert h_contains(half, empty)
    assert implies(empty, [1, 0], 100)


def test_polytope_equal_reports_differences():
    a = VPolytope(2, [(0, 0), (1, 0), (0, 1)])
    b = VPolytope(2, [(0, 0), (1, 0), (1, 1)])
    ok, diff = polytope_equal(a, b)
    assert not ok
    assert diff.missing == [(1, 1)] and diff.extra == [(0, 1)]
    ok, diff = polytope_equal(a, a)
    assert ok and diff.equal
    with pytest.raises(ValueError):
        polytope_equal(a, VPolytope(3, []))


def test_cd3_redundancy_report():
    # the number of true facets of C_3 is an open question here; report it
    out, rep = remove_redundant(build_cd_inequalities(3).h)
    print(f"C_3 redundancy: {rep.counts}")
    assert rep.counts["kept"] + rep.counts["removed"] == 81
    assert h_equal(out, build_cd_inequalities(3).h)
