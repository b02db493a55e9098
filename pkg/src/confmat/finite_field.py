"""Arithmetic in GF(p^m) for odd p.

Elements are polynomials of degree < m over F_p, stored as coefficient tuples
``(c0, c1, ..., c_{m-1})`` for the basis ``1, x, ..., x^{m-1}``.  A field is
fixed by its :class:`FieldSpec`: the lexicographically smallest monic
irreducible modulus (coefficients compared from ``c0`` upwards) and the first
primitive element in the enumeration order ``code(a) = sum(c_i * p**i)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import NotPrime, TooLarge
from .numtheory import factorize, is_prime

MAX_ORDER = 2**20


# ---------------------------------------------------------------------------
# polynomials over F_p, coefficient lists low -> high, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree m >= 1 over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if poly_powmod(x, p**m, f, p) != poly_mod(x, f, p):
        return False
    for r in factorize(m):
        h = poly_sub(poly_powmod(x, p ** (m // r), f, p), x, p)
        if poly_gcd(h, f, p) != [1]:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FieldElement:
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]  # (c0, ..., cm), monic
    eta: FieldElement

    @property
    def q(self) -> int:
        return self.p**self.m

    # -- element construction -------------------------------------------

    def element(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        """Build an element from an F_p integer, a coefficient list, or an element."""
        if isinstance(value, FieldElement):
            coeffs = list(value.coeffs)
        elif isinstance(value, int):
            coeffs = [value]
        else:
            coeffs = list(value)
        if len(coeffs) > self.m:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        coeffs = [c % self.p for c in coeffs] + [0] * (self.m - len(coeffs))
        return FieldElement(tuple(coeffs))

    def from_code(self, code: int) -> FieldElement:
        coeffs = []
        for _ in range(self.m):
            code, c = divmod(code, self.p)
            coeffs.append(c)
        return FieldElement(tuple(coeffs))

    def code(self, a: FieldElement) -> int:
        return sum(c * self.p**i for i, c in enumerate(a.coeffs))

    def elements(self) -> Iterator[FieldElement]:
        """All q elements in enumeration (code) order."""
        return (self.from_code(c) for c in range(self.q))

    @cached_property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    @cached_property
    def one(self) -> FieldElement:
        return self.element(1)

    # -- arithmetic -----------------------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.element(poly_mod(poly_mul(a.coeffs, b.coeffs, self.p), self.modulus, self.p))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            a, e = self.inv(a), -e
        return self.element(poly_powmod(a.coeffs, e, self.modulus, self.p))

    def inv(self, a: FieldElement) -> FieldElement:
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def order(self, a: FieldElement) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        for r in factorize(n) if n > 1 else {}:
            while n % r == 0 and self.pow(a, n // r) == self.one:
                n //= r
        return n

    def is_primitive(self, a: FieldElement) -> bool:
        if a == self.zero:
            return False
        n = self.q - 1
        return all(self.pow(a, n // r) != self.one for r in (factorize(n) if n > 1 else {}))

    # -- orderings used by the constructions -----------------------------

    def eta_power(self, e: int) -> FieldElement:
        return self.pow(self.eta, e)

    def power_order(self) -> list[FieldElement]:
        """0, eta, eta^2, ..., eta^(q-1)."""
        return [self.zero] + [self.eta_power(e) for e in range(1, self.q)]

    def nonzero_squares(self) -> list[FieldElement]:
        """eta^2, eta^4, ..., eta^(q-1)."""
        return [self.eta_power(e) for e in range(2, self.q, 2)]

    def nonzero_nonsquares(self) -> list[FieldElement]:
        """eta, eta^3, ..., eta^(q-2)."""
        return [self.eta_power(e) for e in range(1, self.q, 2)]

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "eta": list(self.eta.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        spec = cls(
            p=int(data["p"]),
            m=int(data["m"]),
            modulus=tuple(int(c) for c in data["modulus"]),
            eta=FieldElement(tuple(int(c) for c in data["eta"])),
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        if self.p == 2 or not is_prime(self.p):
            raise NotPrime(f"p={self.p} is not an odd prime")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        if len(self.eta.coeffs) != self.m or not self.is_primitive(self.eta):
            raise ValueError(f"eta {self.eta.coeffs} is not primitive")


def make_field(p: int, m: int = 1) -> FieldSpec:
    if p == 2:
        raise NotPrime("characteristic 2 is not supported; p must be an odd prime")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError(f"degree must be positive, got {m}")
    if p**m > MAX_ORDER:
        raise TooLarge(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    for low in itertools.product(range(p), repeat=m):
        modulus = tuple(low) + (1,)
        if is_irreducible(modulus, p):
            break
    probe = FieldSpec(p, m, modulus, FieldElement((0,) * m))
    for code in range(1, probe.q):
        a = probe.from_code(code)
        if probe.is_primitive(a):
            return FieldSpec(p, m, modulus, a)
    raise AssertionError("no primitive element found")  # unreachable for a field


def field_of_order(q: int) -> FieldSpec:
    from .numtheory import prime_power

    pp = prime_power(q)
    if pp is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(*pp)


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=64)
def _chi_table(F: FieldSpec) -> tuple[int, ...]:
    table = [-1] * F.q
    table[0] = 0
    for a in F.nonzero_squares():
        table[F.code(a)] = 1
    return tuple(table)


def legendre_chi(F: FieldSpec, a: FieldElement) -> int:
    """Quadratic character: a^((q-1)/2), read from a per-field table."""
    return _chi_table(F)[F.code(a)]


def trace(F: FieldSpec, a: FieldElement) -> int:
    """Absolute trace a + a^p + ... + a^(p^(m-1)), as an integer in [0, p)."""
    total = F.zero
    x = a
    for _ in range(F.m):
        total = F.add(total, x)
        x = F.pow(x, F.p)
    if any(total.coeffs[1:]):
        raise AssertionError(f"trace {total.coeffs} left the prime field")
    return total.coeffs[0]


def additive_character(F: FieldSpec, a: FieldElement) -> complex:
    return cmath.exp(2j * math.pi * trace(F, a) / F.p)


def gauss_sum(F: FieldSpec) -> complex:
    return sum(legendre_chi(F, a) * additive_character(F, a) for a in F.elements())


def gauss_sum_closed_form(p: int, m: int) -> complex:
    """Value of the quadratic Gauss sum over GF(p^m) with the canonical additive character."""
    root_q = math.sqrt(p**m)
    if p % 4 == 1:
        return (-1) ** (m - 1) * root_q
    return -((-1j) ** m) * root_q


def paley_element_order(F: FieldSpec) -> list[FieldElement]:
    """0, then eta^1, eta^3, ..., eta^(q-2), then eta^2, eta^4, ..., eta^(q-1)."""
    return [F.zero] + F.nonzero_nonsquares() + F.nonzero_squares()
