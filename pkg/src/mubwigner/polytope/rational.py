"""Helpers around :class:`fractions.Fraction`, the package's exact rational type."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd

Rational = Fraction


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings; floats only if integral-exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    try:
        return Fraction(int(x))
    except (TypeError, ValueError):
        raise TypeError(f"cannot convert {x!r} to an exact rational") from None


def format_rational(x) -> str:
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    return to_fraction(s)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def integer_row(values) -> tuple:
    """Scale a rational vector by a positive factor to coprime integers.

    Returns ``(ints, factor)`` with ``ints == factor * values``. The zero
    vector maps to itself with factor 1.
    """
    vals = [to_fraction(v) for v in values]
    den = reduce(lcm, (v.denominator for v in vals), 1)
    ints = [v.numerator * (den // v.denominator) for v in vals]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return [0] * len(ints), Fraction(1)
    return [k // g for k in ints], Fraction(den, g)


def primitive(ints) -> list:
    g = reduce(gcd, ints, 0)
    if g <= 1:
        return list(ints)
    return [k // g for k in ints]
