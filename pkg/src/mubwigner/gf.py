"""Arithmetic in the finite fields GF(p^n) that label phase-space axes.

Elements are coefficient vectors of polynomials over Z_p (constant term
first), reduced modulo a fixed monic irreducible polynomial. Every element
also has a canonical integer index ``sum(c_k * p**k)``; element lists are
sorted by that index, so GF(4) comes out as ``[0, 1, x, x+1]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import FieldMismatchError, UnsupportedDimensionError

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# smallest-coefficient monic irreducibles, constant term first
_MODULI = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
}


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % f for f in range(2, int(k ** 0.5) + 1))


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _polymod(num, mod, p):
    """Remainder of ``num`` divided by monic ``mod`` over Z_p (lists, constant first)."""
    num = list(num)
    deg = len(mod) - 1
    for k in range(len(num) - 1, deg - 1, -1):
        c = num[k] % p
        if c:
            for t in range(deg + 1):
                num[k - deg + t] = (num[k - deg + t] - c * mod[t]) % p
    return [c % p for c in num[:deg]] + [0] * max(0, deg - len(num))


def is_irreducible(modulus, p: int) -> bool:
    """Exhaustive irreducibility test for a monic polynomial over Z_p.

    Degrees 2 and 3 only need a root check; higher degrees fall back to
    trial division by every monic polynomial of degree at most n/2.
    """
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1:
        return False
    if n == 1:
        return True
    if any(_poly_eval(modulus, x, p) == 0 for x in range(p)):
        return False
    if n <= 3:
        return True
    for deg in range(2, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not any(_polymod(modulus, divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with a fixed reduction polynomial."""

    p: int
    n: int
    modulus: tuple

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.n + 1:
            raise ValueError("modulus must have n+1 coefficients")
        if self.n > 1 and not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is not irreducible over Z_{self.p}")

    @property
    def d(self) -> int:
        return self.p ** self.n

    def element(self, value) -> "GfElement":
        """Build an element from its canonical index or a coefficient sequence."""
        if isinstance(value, int):
            if not 0 <= value < self.d:
                raise ValueError(f"index {value} out of range for GF({self.d})")
            coeffs = []
            for _ in range(self.n):
                value, c = divmod(value, self.p)
                coeffs.append(c)
            return GfElement(tuple(coeffs), self)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients")
        return GfElement(coeffs, self)

    @property
    def zero(self) -> "GfElement":
        return GfElement((0,) * self.n, self)

    @property
    def one(self) -> "GfElement":
        return GfElement((1,) + (0,) * (self.n - 1), self)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class GfElement:
    coeffs: tuple
    spec: FieldSpec

    @property
    def index(self) -> int:
        return sum(c * self.spec.p ** k for k, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return gf_add(self, other)

    def __sub__(self, other):
        return gf_add(self, gf_neg(other))

    def __neg__(self):
        return gf_neg(self)

    def __mul__(self, other):
        return gf_mul(self, other)

    def __pow__(self, k: int):
        return gf_pow(self, k)

    def __repr__(self):
        if self.spec.n == 1:
            return f"GF{self.spec.d}({self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return f"GF{self.spec.d}({' + '.join(reversed(terms)) or '0'})"


def field_spec(d: int) -> FieldSpec:
    """Return the fixed FieldSpec of order d."""
    return _field_spec(int(d))


@lru_cache(maxsize=None)
def _field_spec(d: int) -> FieldSpec:
    if d not in SUPPORTED_ORDERS:
        raise UnsupportedDimensionError(d, SUPPORTED_ORDERS)
    for p in (2, 3, 5, 7):
        n = 1
        while p ** n < d:
            n += 1
        if p ** n == d:
            modulus = _MODULI.get((p, n), (0, 1))
            return FieldSpec(p, n, modulus)
    raise UnsupportedDimensionError(d, SUPPORTED_ORDERS)


def _check_same(a: GfElement, b: GfElement):
    if a.spec != b.spec:
        raise FieldMismatchError(f"elements from GF({a.spec.d}) and GF({b.spec.d}) mixed")


def gf_add(a: GfElement, b: GfElement) -> GfElement:
    _check_same(a, b)
    p = a.spec.p
    return GfElement(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)), a.spec)


def gf_neg(a: GfElement) -> GfElement:
    p = a.spec.p
    return GfElement(tuple((-x) % p for x in a.coeffs), a.spec)


def gf_mul(a: GfElement, b: GfElement) -> GfElement:
    _check_same(a, b)
    spec = a.spec
    p, n = spec.p, spec.n
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                prod[i + j] = (prod[i + j] + x * y) % p
    if n == 1:
        return GfElement((prod[0],), spec)
    return GfElement(tuple(_polymod(prod, spec.modulus, p)), spec)


def gf_pow(a: GfElement, k: int) -> GfElement:
    if k < 0:
        return gf_pow(gf_inv(a), -k)
    result = a.spec.one
    base = a
    while k:
        if k & 1:
            result = gf_mul(result, base)
        base = gf_mul(base, base)
        k >>= 1
    return result


def gf_inv(a: GfElement) -> GfElement:
    """Multiplicative inverse via a^(d-2)."""
    if a.is_zero():
        raise ZeroDivisionError("no inverse of zero")
    return gf_pow(a, a.spec.d - 2)


def gf_elements(spec: FieldSpec) -> list:
    """All d elements ordered by canonical index (zero first)."""
    return [spec.element(k) for k in range(spec.d)]


def gf_trace(a: GfElement) -> int:
    """Absolute trace a + a^p + ... + a^(p^(n-1)), returned as an integer mod p."""
    acc = a.spec.zero
    x = a
    for _ in range(a.spec.n):
        acc = gf_add(acc, x)
        x = gf_pow(x, a.spec.p)
    if any(acc.coeffs[1:]):
        raise ArithmeticError("trace left the prime subfield")
    return acc.coeffs[0]
