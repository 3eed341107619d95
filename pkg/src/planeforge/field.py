"""Finite fields GF(p^k) and the affine group {x -> a*x + b : a != 0}.

Elements are polynomials over GF(p) reduced modulo a fixed irreducible
polynomial, stored as coefficient tuples (constant term first).  Each element
carries a symbol in 1..q: ``symbol = 1 + sum(c_i * p**i)``, so zero is symbol 1
and the identity map has transformed row ``1 2 ... q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

from .errors import NotPrimePower, PlaneforgeError
from .group import PermSet
from .perm import Permutation

__all__ = [
    "FieldSpec",
    "FieldElement",
    "make_field",
    "make_field_for_order",
    "prime_power",
    "is_prime",
    "agl1",
    "AffineGroup",
    "DEFAULT_MAX_ORDER",
]

DEFAULT_MAX_ORDER = 101

# Coefficients constant-term first; a monic modulus of degree k.
FIXED_MODULI = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    25: (1, 1, 1),       # x^2 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, or ``None``."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    k, m = 0, n
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def _poly_eval(coeffs, x, p):
    return sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1 if k else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic; reduce from the top
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return tuple(prod[:k])


def _is_irreducible(modulus, p) -> bool:
    """Exhaustive check: no monic factor of degree 1..k//2 divides ``modulus``."""
    k = len(modulus) - 1
    if k == 1:
        return True
    if any(_poly_eval(modulus, x, p) == 0 for x in range(p)):
        return False
    for d in range(2, k // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = low + (1,)
            if _poly_divides(divisor, modulus, p):
                return False
    return True


def _poly_divides(divisor, poly, p) -> bool:
    rem = list(poly)
    dd = len(divisor) - 1
    for top in range(len(rem) - 1, dd - 1, -1):
        c = rem[top]
        if c:
            for i in range(dd + 1):
                rem[top - dd + i] = (rem[top - dd + i] - c * divisor[i]) % p
    return not any(rem[:dd])


def _least_irreducible(p: int, k: int):
    # lexicographic over (c_{k-1}, ..., c_0), i.e. smallest as a base-p number
    for num in range(p**k):
        low = tuple((num // p**i) % p for i in range(k))
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise PlaneforgeError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.k)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @cached_property
    def elements(self) -> tuple["FieldElement", ...]:
        return tuple(self.from_symbol(s) for s in range(1, self.q + 1))

    def from_symbol(self, s: int) -> "FieldElement":
        if not 1 <= s <= self.q:
            raise PlaneforgeError(f"symbol {s} outside 1..{self.q}")
        v = s - 1
        return FieldElement(self, tuple((v // self.p**i) % self.p for i in range(self.k)))

    def element(self, coeffs) -> "FieldElement":
        coeffs = tuple(int(c) % self.p for c in coeffs)
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        if len(coeffs) != self.k:
            raise PlaneforgeError("too many coefficients")
        return FieldElement(self, coeffs)

    @property
    def zero(self) -> "FieldElement":
        return self.from_symbol(1)

    @property
    def one(self) -> "FieldElement":
        return self.element((1,))

    @cached_property
    def _mul_table(self):
        q = self.q
        els = [self.from_symbol(s).coefficients for s in range(1, q + 1)]
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                c = _polymulmod(els[a], els[b], self.modulus, self.p)
                table[a][b] = table[b][a] = _symbol(c, self.p) - 1
        return table

    @cached_property
    def primitive_element(self) -> "FieldElement":
        """Least symbol whose multiplicative order is ``q - 1``."""
        for s in range(2, self.q + 1):
            x = self.from_symbol(s)
            if x.multiplicative_order() == self.q - 1:
                return x
        raise PlaneforgeError("field has no primitive element")  # unreachable for fields


def _symbol(coeffs, p) -> int:
    return 1 + sum(c * p**i for i, c in enumerate(coeffs))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coefficients: tuple[int, ...]

    @property
    def symbol_index(self) -> int:
        return _symbol(self.coefficients, self.spec.p)

    def _same(self, other):
        if other.spec != self.spec:
            raise PlaneforgeError("elements from different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "FieldElement":
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coefficients))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._same(other)
        s = self.spec._mul_table[self.symbol_index - 1][other.symbol_index - 1]
        return self.spec.from_symbol(s + 1)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        row = self.spec._mul_table[self.symbol_index - 1]
        return self.spec.from_symbol(row.index(self.spec.one.symbol_index - 1) + 1)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        one = self.spec.one
        x, k = self, 1
        while x != one:
            x = x * self
            k += 1
        return k

    def __repr__(self) -> str:
        return f"<{self.spec!r} symbol {self.symbol_index}>"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def make_field(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    if not is_prime(p):
        raise PlaneforgeError(f"{p} is not prime")
    if k < 1:
        raise PlaneforgeError("extension degree must be at least 1")
    q = p**k
    if q > max_order:
        raise PlaneforgeError(f"field order {q} exceeds bound {max_order}")
    if k == 1:
        modulus = (0, 1)
    elif q in FIXED_MODULI:
        modulus = FIXED_MODULI[q]
    else:
        modulus = _least_irreducible(p, k)
    if k <= 4 and not _is_irreducible(modulus, p):
        raise PlaneforgeError(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p, k, modulus)


def make_field_for_order(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    pk = prime_power(n)
    if pk is None:
        raise NotPrimePower(n)
    return make_field(*pk, max_order=max_order)


@dataclass(frozen=True)
class AffineGroup:
    """All maps ``x -> a*x + b`` (a != 0) of a field, as permutations of symbols.

    ``translation`` is ``x -> x + 1`` and ``multiplier`` is ``x -> g*x`` for the
    field's primitive element ``g``.
    """

    spec: FieldSpec
    elements: PermSet
    translation: Permutation
    multiplier: Permutation

    def __iter__(self):
        # unpacks as (set, s, t)
        return iter((self.elements, self.translation, self.multiplier))

    def affine_map(self, a: FieldElement, b: FieldElement) -> Permutation:
        return _affine(self.spec, a, b)


def _affine(spec: FieldSpec, a: FieldElement, b: FieldElement) -> Permutation:
    return Permutation._trusted(tuple((a * x + b).symbol_index for x in spec.elements))


def agl1(spec: FieldSpec) -> AffineGroup:
    if spec.q < 2:
        raise PlaneforgeError("affine group needs q >= 2")
    perms = [_affine(spec, a, b) for a in spec.elements if not a.is_zero() for b in spec.elements]
    s = _affine(spec, spec.one, spec.one)
    t = _affine(spec, spec.primitive_element, spec.zero)
    return AffineGroup(spec, PermSet(sorted(perms), spec.q), s, t)
