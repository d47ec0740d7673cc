import itertools

import pytest

from mubwigner.errors import FieldMismatchError, UnsupportedDimensionError
from mubwigner.gf import (
    SUPPORTED_ORDERS,
    FieldSpec,
    field_spec,
    gf_elements,
    gf_inv,
    gf_pow,
    gf_trace,
    is_irreducible,
)


@pytest.mark.parametrize("d", SUPPORTED_ORDERS)
def test_field_axioms_exhaustive(d):
    els = gf_elements(field_spec(d))
    zero, one = els[0], els[1]
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in els:
        assert a + zero == a and a * one == a and a * zero == zero
        assert a + (-a) == zero
        if not a.is_zero():
            assert a * gf_inv(a) == one


@pytest.mark.parametrize("d", SUPPORTED_ORDERS)
def test_multiplicative_group_is_cyclic(d):
    els = gf_elements(field_spec(d))[1:]

    def order(a):
        k, x = 1, a
        while x != els[0]:
            x, k = x * a, k + 1
        return k

    assert max(order(a) for a in els) == d - 1


@pytest.mark.parametrize("d", SUPPORTED_ORDERS)
def test_index_round_trip(d):
    spec = field_spec(d)
    for k in range(d):
        assert spec.element(k).index == k
    assert [e.index for e in gf_elements(spec)] == list(range(d))


def test_gf4_table():
    g = field_spec(4)
    x = g.element(2)
    assert (x * x).index == 3          # x^2 = x + 1
    assert (x * g.element(3)).index == 1
    assert (g.element(3) * g.element(3)).index == 2


def test_gf8_powers_of_x():
    # x^3 = x + 1: powers 1, x, x^2, x+1, x^2+x, x^2+x+1, x^2+1
    x = field_spec(8).element(2)
    assert [gf_pow(x, k).index for k in range(8)] == [1, 2, 4, 3, 6, 7, 5, 1]


def test_gf9_modulus():
    g = field_spec(9)
    x = g.element(3)
    assert (x * x).index == 2          # x^2 = -1
    assert gf_pow(g.element(4), 4).index == 2  # (1 + x)^4 = -1, so 1 + x generates


def test_negative_power_is_inverse():
    g = field_spec(7)
    a = g.element(3)
    assert gf_pow(a, -1) == gf_inv(a)
    assert gf_pow(a, -2) * gf_pow(a, 2) == g.one


@pytest.mark.parametrize("d", SUPPORTED_ORDERS)
def test_trace_is_balanced(d):
    spec = field_spec(d)
    counts = {}
    for a in gf_elements(spec):
        t = gf_trace(a)
        counts[t] = counts.get(t, 0) + 1
    assert counts == {t: d // spec.p for t in range(spec.p)}


@pytest.mark.parametrize("d", [1, 6, 10, 11, 12, 16, 25])
def test_unsupported_orders(d):
    with pytest.raises(UnsupportedDimensionError, match="unsupported dimension"):
        field_spec(d)


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatchError):
        field_spec(4).element(1) + field_spec(2).element(1)
    with pytest.raises(FieldMismatchError):
        field_spec(3).element(1) * field_spec(9).element(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        gf_inv(field_spec(5).zero)


def test_irreducibility():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)       # x^2 + 1 = (x + 1)^2 over Z_2
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((2, 0, 1), 3)       # x^2 + 2 = (x + 1)(x + 2) over Z_3
    assert is_irreducible((1, 1, 0, 1), 2)
    assert not is_irreducible((1, 1, 1, 1), 2)    # has the root 1
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(ValueError):
        FieldSpec(4, 1, (0, 1))


def test_element_validation():
    g = field_spec(4)
    with pytest.raises(ValueError):
        g.element(4)
    with pytest.raises(ValueError):
        g.element((1,))
    assert g.element((1, 1)).index == 3
    assert repr(g.element(3)) == "GF4(x + 1)"
