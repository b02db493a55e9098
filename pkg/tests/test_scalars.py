from __future__ import annotations

import cmath

import pytest
from hypothesis import given, settings

from conftest import assignments, gaussian_ints, sym_exprs, unimodular_monomials
from confmat.errors import MissingParameter, NonUnimodularValue, ParseError
from confmat.scalars import GaussianInt, SymExpr, format_scalar, parse_scalar

a, b = SymExpr.param("a"), SymExpr.param("b")


def test_gaussian_int_arithmetic():
    z = GaussianInt(3, -4)
    assert z * z.conj() == GaussianInt(25, 0)
    assert z.norm() == 25
    assert GaussianInt(0, 1) * GaussianInt(0, 1) == GaussianInt(-1, 0)
    assert GaussianInt.coerce(2 + 3j) == GaussianInt(2, 3)
    with pytest.raises(TypeError):
        GaussianInt.coerce(0.5)


def test_unimodular_parameter_identities():
    assert a * a.conj() == 1
    assert (a * b) ** -1 == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a - a).is_zero()


def test_canonical_form_merges_terms():
    x = SymExpr([((("a", 1),), GaussianInt(2, 0)), ((("a", 1),), GaussianInt(-2, 0))])
    assert x.is_zero() and x == 0
    y = SymExpr([((("b", 1), ("a", -1)), GaussianInt(1, 1))])
    assert y.terms[0].exps == (("a", -1), ("b", 1))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-a*conj(b)", -a * b.conj()),
        ("1 + a*conj(b)", 1 + a * b.conj()),
        ("i*i", SymExpr.const(-1)),
        ("2*i*a - 3", SymExpr.const(2j) * a - 3),
        ("+b", b),
        ("0", SymExpr()),
    ],
)
def test_parse_examples(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize(
    "x, text",
    [(-a * b.conj(), "-a*conj(b)"), (SymExpr.const(-3 + 4j) + SymExpr.const(2j) * a, "-3+4*i+2*i*a"), (SymExpr(), "0")],
)
def test_format_examples(x, text):
    assert format_scalar(x) == text


@pytest.mark.parametrize(
    "text, offset",
    [("a*+b", 2), ("a b", 2), ("conj(g)", 5), ("ab", 0), ("1+", 2), ("conj a", 5), ("é+x", 0)],
)
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_scalar(text)
    assert info.value.offset == offset


def test_eval_requires_unimodular_assignment():
    x = a * b.conj()
    assert abs(x.eval({"a": 1j, "b": -1}) - (-1j)) < 1e-15
    with pytest.raises(MissingParameter):
        x.eval({"a": 1})
    with pytest.raises(NonUnimodularValue):
        x.eval({"a": 2, "b": 1})
    with pytest.raises(NonUnimodularValue):
        (a + b) ** -1


def test_subs_is_simultaneous():
    x = a * b.conj()
    assert x.subs({"a": b, "b": a}) == b * a.conj()


@settings(max_examples=200, deadline=None)
@given(sym_exprs)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@settings(max_examples=150, deadline=None)
@given(sym_exprs, sym_exprs, sym_exprs)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x


@settings(max_examples=150, deadline=None)
@given(sym_exprs, sym_exprs, assignments)
def test_eval_is_a_homomorphism(x, y, values):
    bound = max(1, x.coefficient_bound() * y.coefficient_bound())
    assert cmath.isclose((x * y).eval(values), x.eval(values) * y.eval(values), abs_tol=1e-12 * bound)
    assert cmath.isclose((x + y).eval(values), x.eval(values) + y.eval(values), abs_tol=1e-12 * bound)
    assert cmath.isclose(x.conj().eval(values), x.eval(values).conjugate(), abs_tol=1e-12 * bound)


@settings(max_examples=100, deadline=None)
@given(unimodular_monomials, assignments)
def test_unimodular_monomials_have_modulus_one(m, values):
    assert m.is_unimodular()
    assert m * m.conj() == 1
    assert abs(abs(m.eval(values)) - 1) < 1e-12


@given(gaussian_ints, gaussian_ints)
def test_gaussian_norm_is_multiplicative(z, w):
    assert (z * w).norm() == z.norm() * w.norm()
