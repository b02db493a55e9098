"""Exact scalars: Gaussian-integer combinations of unimodular monomials.

A :class:`SymExpr` is a finite sum ``z1*m1 + z2*m2 + ...`` where each ``z`` is
a Gaussian integer and each ``m`` is a product of named parameters raised to
integer powers.  All parameters are assumed to have modulus one, so the
conjugate of a parameter is stored as its inverse (exponent ``-1``).  This
makes conjugation and products closed and keeps a unique canonical form.

The textual form accepted by :func:`parse_scalar` and produced by
:func:`format_scalar` is::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := integer | 'i' | param | 'conj(' param ')'
    param  := one letter in a-f
"""

from __future__ import annotations

import cmath
import numbers
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import MissingParameter, NonUnimodularValue, ParseError

PARAM_NAMES = "abcdef"
UNIMODULAR_TOL = 1e-12

Key = tuple[tuple[str, int], ...]


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    @classmethod
    def coerce(cls, value: object) -> GaussianInt:
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, numbers.Integral):
            return cls(int(value), 0)
        if isinstance(value, numbers.Complex):
            z = complex(value)
            if z.real.is_integer() and z.imag.is_integer():
                return cls(int(z.real), int(z.imag))
        raise TypeError(f"cannot use {value!r} as a Gaussian integer")


ONE = GaussianInt(1, 0)
UNITS = {GaussianInt(1, 0), GaussianInt(-1, 0), GaussianInt(0, 1), GaussianInt(0, -1)}


@dataclass(frozen=True, slots=True)
class SymMonomial:
    """One term ``coeff * prod(name**exp)``; ``exps`` omits zero exponents."""

    coeff: GaussianInt
    exps: Key

    def conj(self) -> SymMonomial:
        return SymMonomial(self.coeff.conj(), tuple((n, -e) for n, e in self.exps))


def _merge_keys(k1: Key, k2: Key) -> Key:
    if not k1:
        return k2
    if not k2:
        return k1
    exps = dict(k1)
    for name, e in k2:
        total = exps.get(name, 0) + e
        if total:
            exps[name] = total
        else:
            del exps[name]
    return tuple(sorted(exps.items()))


class SymExpr:
    """Immutable exact scalar in canonical form.

    ``terms`` is a tuple of :class:`SymMonomial` sorted by exponent key, with
    pairwise distinct keys and nonzero coefficients.  Two expressions are
    equal exactly when their term tuples are identical.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[tuple[Key, GaussianInt]] = ()) -> None:
        acc: dict[Key, GaussianInt] = {}
        for key, coeff in terms:
            key = tuple(sorted((n, e) for n, e in key if e))
            acc[key] = acc[key] + coeff if key in acc else coeff
        self._terms = tuple(
            SymMonomial(acc[k], k) for k in sorted(acc) if acc[k]
        )
        self._hash = None

    @classmethod
    def _from_canonical(cls, items: dict[Key, GaussianInt]) -> SymExpr:
        # items must already have canonical keys
        obj = cls.__new__(cls)
        obj._terms = tuple(SymMonomial(items[k], k) for k in sorted(items) if items[k])
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value: object) -> SymExpr:
        return cls([((), GaussianInt.coerce(value))]) if value else cls()

    @classmethod
    def param(cls, name: str, exp: int = 1) -> SymExpr:
        if name not in PARAM_NAMES or len(name) != 1:
            raise ValueError(f"parameter names are single letters a-f, got {name!r}")
        return cls([(((name, exp),), ONE)])

    @classmethod
    def coerce(cls, value: object) -> SymExpr:
        if isinstance(value, SymExpr):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        return cls.const(GaussianInt.coerce(value))

    @property
    def terms(self) -> tuple[SymMonomial, ...]:
        return self._terms

    def params(self) -> frozenset[str]:
        return frozenset(n for t in self._terms for n, _ in t.exps)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not t.exps for t in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unimodular(self) -> bool:
        """True when the value has modulus one for every unimodular assignment."""
        return len(self._terms) == 1 and self._terms[0].coeff.norm() == 1

    def coefficient_bound(self) -> int:
        """Upper bound on ``|eval(self, v)|`` over unimodular ``v``."""
        return sum(abs(t.coeff.re) + abs(t.coeff.im) for t in self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymExpr):
            try:
                other = SymExpr.coerce(other)
            except (TypeError, ParseError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: object) -> SymExpr:
        if not isinstance(other, SymExpr):
            try:
                other = SymExpr.const(GaussianInt.coerce(other))
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = {t.exps: t.coeff for t in self._terms}
        for t in other._terms:
            acc[t.exps] = acc[t.exps] + t.coeff if t.exps in acc else t.coeff
        return SymExpr._from_canonical(acc)

    __radd__ = __add__

    def __neg__(self) -> SymExpr:
        return SymExpr._from_canonical({t.exps: -t.coeff for t in self._terms})

    def __sub__(self, other: object) -> SymExpr:
        if not isinstance(other, SymExpr):
            try:
                other = SymExpr.const(GaussianInt.coerce(other))
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> SymExpr:
        return (-self) + other

    def __mul__(self, other: object) -> SymExpr:
        if not isinstance(other, SymExpr):
            try:
                z = GaussianInt.coerce(other)
            except TypeError:
                return NotImplemented
            if not z:
                return SymExpr()
            return SymExpr._from_canonical({t.exps: t.coeff * z for t in self._terms})
        acc: dict[Key, GaussianInt] = {}
        for s in self._terms:
            for t in other._terms:
                key = _merge_keys(s.exps, t.exps)
                c = s.coeff * t.coeff
                acc[key] = acc[key] + c if key in acc else c
        return SymExpr._from_canonical(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SymExpr:
        if n < 0:
            if not self.is_unimodular():
                raise NonUnimodularValue(f"cannot invert non-unimodular {self}")
            return self.conj() ** (-n)
        result = SymExpr.const(1)
        for _ in range(n):
            result = result * self
        return result

    def conj(self) -> SymExpr:
        return SymExpr._from_canonical(
            {tuple((n, -e) for n, e in t.exps): t.coeff.conj() for t in self._terms}
        )

    # numpy calls this for np.conj on object arrays
    conjugate = conj

    def canonical(self) -> SymExpr:
        return SymExpr((t.exps, t.coeff) for t in self._terms)

    def subs(self, values: Mapping[str, SymExpr]) -> SymExpr:
        """Substitute unimodular monomials for parameters."""
        for name, v in values.items():
            if not v.is_unimodular():
                raise NonUnimodularValue(f"value {v} for {name!r} is not a unimodular monomial")
        result = SymExpr()
        for t in self._terms:
            term = SymExpr.const(t.coeff)
            for name, e in t.exps:
                factor = values[name] ** e if name in values else SymExpr.param(name, e)
                term = term * factor
            result = result + term
        return result

    def eval(self, assignment: Mapping[str, complex]) -> complex:
        return eval_scalar(self, assignment)

    def __complex__(self) -> complex:
        if not self.is_constant():
            raise MissingParameter(sorted(self.params())[0])
        return self.eval({})

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"SymExpr({format_scalar(self)!r})"


Scalar = Union[SymExpr, complex]

ZERO = SymExpr()
I_UNIT = SymExpr.const(GaussianInt(0, 1))


def add(x: SymExpr, y: SymExpr) -> SymExpr:
    return x + y


def mul(x: SymExpr, y: SymExpr) -> SymExpr:
    return x * y


def conj(x):
    """Conjugate a SymExpr or any numeric scalar."""
    if isinstance(x, SymExpr):
        return x.conj()
    return complex(x).conjugate()


def check_assignment(assignment: Mapping[str, complex], names: Iterable[str]) -> None:
    for name in names:
        if name not in assignment:
            raise MissingParameter(name)
        v = complex(assignment[name])
        if not cmath.isfinite(v) or abs(abs(v) - 1.0) > UNIMODULAR_TOL:
            raise NonUnimodularValue(f"|{name}| = {abs(v)!r} is not 1")


def eval_scalar(x: SymExpr, assignment: Mapping[str, complex]) -> complex:
    check_assignment(assignment, x.params())
    total = 0j
    for t in x.terms:
        v = complex(t.coeff)
        for name, e in t.exps:
            v *= complex(assignment[name]) ** e
        total += v
    return total


# ---------------------------------------------------------------------------
# text form


def _monomial_factors(exps: Key) -> list[str]:
    out = []
    for name, e in exps:
        out.extend([name] * e if e > 0 else [f"conj({name})"] * (-e))
    return out


def _format_part(c: int, imag: bool, factors: list[str]) -> str:
    """Render ``c * [i] * factors`` with its sign folded in front."""
    sign = "-" if c < 0 else "+"
    body = []
    if abs(c) != 1 or (not imag and not factors):
        body.append(str(abs(c)))
    if imag:
        body.append("i")
    body.extend(factors)
    return sign + "*".join(body)


def format_scalar(x: SymExpr) -> str:
    parts = []
    for t in x.terms:
        factors = _monomial_factors(t.exps)
        if t.coeff.re:
            parts.append(_format_part(t.coeff.re, False, factors))
        if t.coeff.im:
            parts.append(_format_part(t.coeff.im, True, factors))
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        raise ParseError(message, self.text, len(self.text[:pos].encode("utf-8")))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> SymExpr:
        result = SymExpr()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        result = result + self.term() * sign
        while True:
            ch = self.peek()
            if ch == "":
                return result
            if ch not in "+-":
                self.fail(f"expected '+', '-' or end of input, found {ch!r}")
            self.pos += 1
            result = result + self.term() * (-1 if ch == "-" else 1)

    def term(self) -> SymExpr:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> SymExpr:
        ch = self.peek()
        start = self.pos
        if ch == "":
            self.fail("unexpected end of input")
        if ch.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return SymExpr.const(int(self.text[start:self.pos]))
        if self.text.startswith("conj", self.pos):
            self.pos += 4
            if self.peek() != "(":
                self.fail("expected '(' after conj")
            self.pos += 1
            name = self.name()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return SymExpr.param(name, -1)
        if ch == "i":
            self.pos += 1
            return I_UNIT
        if ch.isalpha():
            return SymExpr.param(self.name(), 1)
        self.fail(f"unexpected character {ch!r}")

    def name(self) -> str:
        ch = self.peek()
        start = self.pos
        if ch not in PARAM_NAMES or not ch:
            self.fail(f"expected a parameter name in a-f, found {ch!r}")
        self.pos += 1
        if self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.fail("parameter names are single letters", start)
        return ch


def parse_scalar(text: str) -> SymExpr:
    return _Parser(text).expr()
