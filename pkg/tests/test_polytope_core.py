from fractions import Fraction as F

import numpy as np
import pytest

from mubwigner.polytope import HPolytope, VPolytope
from mubwigner.polytope.io import h_from_json, h_to_json, v_from_json, v_to_json
from mubwigner.polytope.linalg import (
    exact_rank,
    has_full_column_rank,
    inverse,
    mod_rank,
    nullspace,
    rref,
    solve_affine,
)
from mubwigner.polytope.rational import format_rational, integer_row, parse_rational, primitive, to_fraction
from mubwigner.polytope.types import ConvexCombination, SeparatingHyperplane

from oracles import rank


def test_to_fraction():
    assert to_fraction("3/6") == F(1, 2)
    assert to_fraction(" -2 ") == -2
    assert to_fraction(0.25) == F(1, 4)
    assert to_fraction(np.int64(7)) == 7
    with pytest.raises(TypeError):
        to_fraction(object())
    assert format_rational(F(-4, 6)) == "-2/3"
    assert parse_rational(format_rational(F(22, 7))) == F(22, 7)


def test_integer_row():
    ints, scale = integer_row([F(1, 2), F(-1, 3), 2])
    assert ints == [3, -2, 12]
    assert scale == 6
    assert integer_row([0, 0]) == ([0, 0], 1)
    ints, scale = integer_row([4, 6])
    assert ints == [2, 3] and scale == F(1, 2)
    assert primitive([6, -9, 12]) == [2, -3, 4]


def test_rank_routes_agree():
    rng = np.random.default_rng(3)
    for _ in range(50):
        m, n = rng.integers(1, 7, size=2)
        r = rng.integers(1, min(m, n) + 1)
        A = (rng.integers(-4, 5, size=(m, r)) @ rng.integers(-4, 5, size=(r, n))).tolist()
        want = rank(A, n)
        assert exact_rank(A, n) == want
        assert mod_rank(np.array(A)) == want
        assert has_full_column_rank(np.array(A)) == (want == n)


def test_modular_rank_with_big_entries():
    p = 2147483647
    A = np.array([[p, 0], [0, 1]], dtype=object)
    # p vanishes mod p: the fast path undercounts and the exact route decides
    assert mod_rank(A) == 1
    assert has_full_column_rank(A)


def test_rref_nullspace_solve():
    R, piv = rref([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert piv == [0, 1]
    assert R == [[1, 0, 1], [0, 1, 1]]
    N = nullspace([[1, 2, 3], [1, 0, 1]], 3)
    assert N == [[-1, -1, 1]]
    x0, Nb = solve_affine([[1, 1, 0]], [F(1)], 3)
    assert x0[0] + x0[1] == 1
    assert len(Nb[0]) == 2
    assert solve_affine([[1, 1], [1, 1]], [1, 2], 2) is None
    inv = inverse([[2, 1], [1, 1]])
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])


def test_hpolytope_validation():
    with pytest.raises(ValueError):
        HPolytope(2, [([1], 0)])
    with pytest.raises(ValueError):
        HPolytope(2, [([0, 0], 0)])
    with pytest.raises(ValueError):
        HPolytope(0, [])


def test_contains_and_slacks():
    h = HPolytope.from_arrays([[1, 0], [0, 1], [-1, -1]], [0, 0, -1])
    assert h.contains([F(1, 3), F(1, 3)])
    assert h.contains([1, 0])
    assert not h.contains([F(2, 3), F(2, 3)])
    assert list(h.slack_signs([1, 0])) == [1, 0, 0]
    assert h.slacks([F(1, 4), F(1, 4)]) == [F(1, 4), F(1, 4), F(1, 2)]
    with pytest.raises(ValueError):
        h.slack_signs([1])
    he = HPolytope(2, [([1, 0], 0)], [([1, 1], 1)])
    assert he.contains([F(1, 2), F(1, 2)])
    assert not he.contains([F(1, 2), F(1, 3)])


def test_slack_signs_with_huge_entries():
    big = 10 ** 30
    h = HPolytope.from_arrays([[big, 1]], [big])
    assert list(h.slack_signs([1, 0])) == [0]
    assert list(h.slack_signs([1, F(-1, 10 ** 40)])) == [-1]


def test_vpolytope_dedup_and_order():
    v = VPolytope(2, [[1, 0], [0, 1], ["1", "0"]])
    assert v.vertices == [(0, 1), (1, 0)]
    assert len(v) == 2
    with pytest.raises(ValueError):
        VPolytope(2, [[1, 0, 0]])


def test_certificate_types():
    c = ConvexCombination([(0, F(1, 3)), (1, F(2, 3))])
    assert c.point([(0, 0), (3, 3)]) == (2, 2)
    with pytest.raises(ValueError):
        ConvexCombination([(0, F(1, 2))])
    with pytest.raises(ValueError):
        ConvexCombination([(0, F(3, 2)), (1, F(-1, 2))])
    s = SeparatingHyperplane((F(1), F(1)), F(1), F(1, 2))
    assert s.value([F(1, 4), F(1, 4)]) == F(-1, 2)


def test_json_round_trip():
    h = HPolytope(2, [([F(1, 2), 0], F(-1, 3))], [([1, 1], 1)])
    js = h_to_json(h)
    assert js["inequalities"][0] == {"a": ["1/2", "0/1"], "b": "-1/3"}
    assert h_from_json(js) == h
    v = VPolytope(2, [[F(1, 3), 0], [1, 1]])
    assert v_from_json(v_to_json(v)) == v
    assert v_to_json(VPolytope(3, [], infeasible=True))["infeasible"] is True
