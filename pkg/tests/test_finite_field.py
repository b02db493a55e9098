from __future__ import annotations

import cmath
import math
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confmat.errors import NotPrime, TooLarge
from confmat.finite_field import (
    FieldSpec,
    additive_character,
    field_of_order,
    gauss_sum,
    gauss_sum_closed_form,
    is_irreducible,
    legendre_chi,
    make_field,
    paley_element_order,
    trace,
)

ODD_PRIME_POWERS = [q for q in range(3, 130) if q % 2 and len(sympy.factorint(q)) == 1]


def _oracle_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible in (c0, c1, ...) order, by sympy."""
    x = sympy.symbols("x")
    for cs in product(range(p), repeat=m):
        poly = sympy.Poly(x**m + sum(c * x**i for i, c in enumerate(cs)), x, modulus=p)
        if poly.is_irreducible:
            return cs + (1,)
    raise AssertionError


@pytest.mark.parametrize("p, m", [(3, 2), (3, 3), (5, 2), (7, 2), (3, 4), (11, 2), (5, 3)])
def test_modulus_is_smallest_irreducible(p, m):
    assert make_field(p, m).modulus == _oracle_modulus(p, m)


def test_frozen_small_fields():
    F5 = make_field(5)
    assert F5.modulus == (0, 1) and F5.eta.coeffs == (2,)
    assert [F5.code(a) for a in paley_element_order(F5)] == [0, 2, 3, 4, 1]
    F9 = make_field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert F9.eta.coeffs == (1, 1) and F9.code(F9.eta) == 4


@pytest.mark.parametrize("q", ODD_PRIME_POWERS)
def test_eta_is_first_primitive(q):
    F = field_of_order(q)
    F.validate()
    assert F.order(F.eta) == q - 1
    assert all(not F.is_primitive(F.from_code(c)) for c in range(1, F.code(F.eta)))


@pytest.mark.parametrize("q", ODD_PRIME_POWERS)
def test_quadratic_character(q):
    F = field_of_order(q)
    values = [legendre_chi(F, a) for a in F.elements()]
    assert values.count(0) == 1 and values.count(1) == values.count(-1) == (q - 1) // 2
    squares = {F.code(F.mul(a, a)) for a in F.elements()} - {0}
    assert {F.code(a) for a in F.nonzero_squares()} == squares
    assert legendre_chi(F, F.neg(F.one)) == (1 if q % 4 == 1 else -1)
    # Euler's criterion
    for a in F.elements():
        if a != F.zero:
            assert legendre_chi(F, a) == (1 if F.pow(a, (q - 1) // 2) == F.one else -1)


@pytest.mark.parametrize("q", ODD_PRIME_POWERS)
def test_gauss_sum_matches_closed_form(q):
    p, m = next(iter(sympy.factorint(q).items()))
    F = field_of_order(q)
    g = gauss_sum(F)
    assert abs(abs(g) - math.sqrt(q)) < 1e-9
    assert abs(g - gauss_sum_closed_form(p, m)) < 1e-9


def test_gauss_sum_closed_form_values():
    assert gauss_sum_closed_form(5, 1) == pytest.approx(math.sqrt(5))
    assert gauss_sum_closed_form(5, 2) == pytest.approx(-5)
    assert gauss_sum_closed_form(3, 1) == pytest.approx(1j * math.sqrt(3))
    assert gauss_sum_closed_form(3, 2) == pytest.approx(3)
    assert gauss_sum_closed_form(3, 3) == pytest.approx(-3j * math.sqrt(3))


def test_errors():
    with pytest.raises(NotPrime):
        make_field(2)
    with pytest.raises(NotPrime):
        make_field(9)
    with pytest.raises(TooLarge):
        make_field(3, 13)
    with pytest.raises(NotPrime):
        field_of_order(12)


def test_json_round_trip():
    F = make_field(7, 2)
    assert FieldSpec.from_json(F.to_json()) == F


def test_is_irreducible_agrees_with_sympy():
    x = sympy.symbols("x")
    for p in (3, 5):
        for cs in product(range(p), repeat=3):
            f = list(cs) + [1]
            poly = sympy.Poly(sum(c * x**i for i, c in enumerate(f)), x, modulus=p)
            assert is_irreducible(f, p) == poly.is_irreducible


FIELDS = [make_field(3, 2), make_field(5, 2), make_field(3, 3), make_field(7, 1)]


@st.composite
def field_triples(draw):
    F = draw(st.sampled_from(FIELDS))
    codes = st.integers(0, F.q - 1)
    return F, F.from_code(draw(codes)), F.from_code(draw(codes)), F.from_code(draw(codes))


@settings(max_examples=300, deadline=None)
@given(field_triples())
def test_field_axioms(t):
    F, x, y, z = t
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.add(x, F.neg(x)) == F.zero
    if x != F.zero:
        assert F.mul(x, F.inv(x)) == F.one
    assert legendre_chi(F, F.mul(x, y)) == legendre_chi(F, x) * legendre_chi(F, y)
    assert trace(F, F.add(x, y)) == (trace(F, x) + trace(F, y)) % F.p
    assert trace(F, F.pow(x, F.p)) == trace(F, x)
    assert cmath.isclose(
        additive_character(F, F.add(x, y)), additive_character(F, x) * additive_character(F, y), abs_tol=1e-12
    )


@pytest.mark.parametrize("p, m", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_trace_shifted_form_agrees(p, m):
    # a^p + ... + a^(p^m) against a + a^p + ... + a^(p^(m-1)), term sums compared as field elements
    F = make_field(p, m)
    for a in F.elements():
        shifted = F.zero
        for j in range(1, m + 1):
            shifted = F.add(shifted, F.pow(a, p**j))
        assert shifted == F.element(trace(F, a))
