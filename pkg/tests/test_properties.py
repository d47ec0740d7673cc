"""Randomized properties driven by hypothesis."""
from fractions import Fraction as F

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mubwigner.cd import cd_membership, conjectured_vertices
from mubwigner.gf import SUPPORTED_ORDERS, field_spec, gf_pow
from mubwigner.mub import build_mubs
from mubwigner.phasespace import build_striations
from mubwigner.polytope import HPolytope, is_bounded, vertex_enumeration
from mubwigner.polytope.io import h_from_json, h_to_json
from mubwigner.polytope.rational import format_rational, parse_rational
from mubwigner.wigner import PMatrix, WignerDefinition, line_sum_check, p_matrix_from_state, random_state, wigner_from_p

from oracles import brute_force_vertices

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100)


@st.composite
def field_pairs(draw):
    d = draw(st.sampled_from(SUPPORTED_ORDERS))
    spec = field_spec(d)
    a = spec.element(draw(st.integers(0, d - 1)))
    b = spec.element(draw(st.integers(0, d - 1)))
    return spec, a, b


@SETTINGS
@given(field_pairs())
def test_frobenius_is_additive(args):
    spec, a, b = args
    p = spec.p
    assert gf_pow(a + b, p) == gf_pow(a, p) + gf_pow(b, p)
    assert gf_pow(a * b, p) == gf_pow(a, p) * gf_pow(b, p)


@SETTINGS
@given(field_pairs())
def test_fermat(args):
    spec, a, _ = args
    assert gf_pow(a, spec.d) == a


@SETTINGS
@given(fractions)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@st.composite
def h_systems(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(n, 7))
    rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n)
                         .filter(lambda r: any(r)), min_size=m, max_size=m))
    b = draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m))
    # a bounding box keeps most systems bounded and the columns independent
    for k in range(n):
        e = [0] * n
        e[k] = 1
        rows += [e, [-x for x in e]]
        b += [-3, -3]
    return rows, b


@SETTINGS
@given(h_systems(), st.sampled_from(["dd", "pivot"]))
def test_vertex_enumeration_matches_brute_force(system, backend):
    A, b = system
    status, verts = brute_force_vertices(A, b)
    h = HPolytope.from_arrays(A, b)
    assert is_bounded(h)
    v = vertex_enumeration(h, backend=backend)
    assert v.infeasible == (status == "infeasible")
    assert v.vertices == verts


@SETTINGS
@given(h_systems())
def test_h_json_round_trip(system):
    h = HPolytope.from_arrays(*system)
    assert h_from_json(h_to_json(h)) == h


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(0, 2 ** 31 - 1), st.integers(0, 2 ** 31 - 1))
def test_wigner_function_sums_to_one(d, seed, perm_seed):
    spec = field_spec(d)
    m, s = build_mubs(spec), build_striations(spec)
    rng = np.random.default_rng(perm_seed)
    defn = WignerDefinition(d, rng.permutation(d + 1) + 1, [rng.permutation(d) + 1 for _ in range(d + 1)])
    p = p_matrix_from_state(random_state(d, seed), m)
    w = wigner_from_p(p, defn, s)
    assert abs(float(w.total) - 1) < 1e-12
    assert line_sum_check(w, defn, s, p) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_convex_mixtures_of_mub_states_are_in(d, data):
    verts = conjectured_vertices(d).vertices
    raw = data.draw(st.lists(st.integers(0, 9), min_size=len(verts), max_size=len(verts)).filter(any))
    w = [F(r, sum(raw)) for r in raw]
    x = [sum(wk * v[i] for wk, v in zip(w, verts)) for i in range(d * d - 1)]
    rows = [x[i * (d - 1):(i + 1) * (d - 1)] for i in range(d + 1)]
    res = cd_membership(PMatrix.from_rows([r + [1 - sum(r)] for r in rows]))
    assert res.verdict == "IN"
    assert res.weights.point(verts) == tuple(x)
