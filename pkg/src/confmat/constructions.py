"""Matrix families: Paley matrices, C(a,b), Hadamard doubling, the block square,
Fourier matrices, the explicit order 6/10/14 Hermitian families, quaternary
specializations and the small conversions between them.

Parameter values given to the families may be

* a parameter name or unimodular monomial (``"b"``, ``"conj(a)"``, ``"i"``,
  ``1``), giving a symbolic matrix, or
* Python complex numbers of modulus one, giving a complex matrix.

Integer-valued constants such as ``1`` stay symbolic so that results remain
exact.  Mixing symbolic names with complex values is rejected.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .design import DesignMatrix, dagger, is_symbolic, sym_array, sym_identity
from .errors import BadOrder, NonUnimodularValue, NotConference, NotHadamard, NotSkewConference
from .finite_field import FieldSpec, field_of_order, legendre_chi, paley_element_order
from .numtheory import prime_power
from .scalars import UNIMODULAR_TOL, SymExpr, parse_scalar

ParamValue = Union[str, SymExpr, int, complex]

IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class PaleyBlocks:
    k: int
    A: np.ndarray  # (k-1)x(k-1) integers
    B: np.ndarray


# ---------------------------------------------------------------------------
# parameter handling


def _resolve(values: Mapping[str, ParamValue]) -> tuple[str, dict]:
    """Classify parameter values as all-symbolic or all-complex.

    Returns the mode and a mapping name -> SymExpr (symbolic) or complex.
    """
    sym: dict[str, SymExpr] = {}
    num: dict[str, complex] = {}
    for name, v in values.items():
        if isinstance(v, (str, SymExpr)) or isinstance(v, numbers.Integral):
            e = parse_scalar(v) if isinstance(v, str) else SymExpr.coerce(v)
            if not e.is_unimodular():
                raise NonUnimodularValue(f"value {e} for {name!r} is not a unimodular monomial")
            sym[name] = e
        elif isinstance(v, numbers.Complex):
            z = complex(v)
            if not cmath.isfinite(z) or abs(abs(z) - 1) > UNIMODULAR_TOL:
                raise NonUnimodularValue(f"|{name}| = {abs(z)!r} is not 1")
            num[name] = z
        else:
            raise TypeError(f"unsupported parameter value {v!r} for {name!r}")
    if not num:
        return "symbolic", sym
    for name, e in sym.items():
        if not e.is_constant():
            raise NonUnimodularValue(
                f"cannot mix symbolic {name}={e} with complex values; assign it a number"
            )
        num[name] = complex(e)
    return "complex", num


def instantiate(template: np.ndarray, values: Mapping[str, ParamValue]) -> np.ndarray:
    """Substitute parameter values into a symbolic template array."""
    mode, resolved = _resolve(values)
    if mode == "symbolic":
        out = np.empty(template.shape, dtype=object)
        for idx, x in np.ndenumerate(template):
            out[idx] = x.subs(resolved)
        return out
    out = np.empty(template.shape, dtype=complex)
    for idx, x in np.ndenumerate(template):
        out[idx] = x.eval(resolved)
    return out


def _require_paley_order(q: int) -> FieldSpec:
    if prime_power(q) is None or q % 2 == 0:
        raise BadOrder(f"q={q} is not an odd prime power")
    if q % 4 != 1:
        raise BadOrder(f"q={q} is not 1 mod 4, so q+1 is not 2 mod 4")
    return field_of_order(q)


# ---------------------------------------------------------------------------
# Paley matrices and C(a, b)


def paley_integer_matrix(q: int) -> np.ndarray:
    """The real symmetric conference matrix of order q+1 as an int array.

    Rows and columns are indexed by the vectors x, y, y+eta*x, y+eta^3*x, ...,
    y+eta^2*x, y+eta^4*x, ... of a plane over GF(q) with basis (x, y); the
    entry is the quadratic character of det(u, v) = u_y*v_x - u_x*v_y, which
    makes det(y, x) = 1.
    """
    F = _require_paley_order(q)
    vectors = [(F.one, F.zero)] + [(alpha, F.one) for alpha in paley_element_order(F)]
    n = q + 1
    C = np.zeros((n, n), dtype=np.int64)
    for i, (ux, uy) in enumerate(vectors):
        for j, (vx, vy) in enumerate(vectors):
            C[i, j] = legendre_chi(F, F.sub(F.mul(uy, vx), F.mul(ux, vy)))
    return C


def paley_matrix(q: int) -> DesignMatrix:
    C = paley_integer_matrix(q)
    return DesignMatrix("conference", sym_array(C.tolist()), [], {"construction": "paley", "q": q})


def blocks_of(C: np.ndarray) -> PaleyBlocks:
    """Read A and B off a matrix laid out as [0 1 j j; 1 0 -j j; j -j A B; j j B^T -A]."""
    n = C.shape[0]
    k = n // 2
    return PaleyBlocks(k, np.array(C[2 : k + 1, 2 : k + 1]), np.array(C[2 : k + 1, k + 1 :]))


def paley_blocks(q: int) -> PaleyBlocks:
    return blocks_of(paley_integer_matrix(q))


def assemble_cab(blocks: PaleyBlocks, a, b, conj_b) -> np.ndarray:
    """Lay out [0 1 j j; 1 0 -aj aj; j -aj aA abB; j aj a*conj(b)*B^T -aA].

    ``a``, ``b`` and ``conj_b`` are scalars of one kind (SymExpr or complex).
    """
    k = blocks.k
    n = 2 * k
    h = k - 1
    dtype = object if isinstance(a, SymExpr) else complex
    zero = SymExpr() if dtype is object else 0j
    one = SymExpr.const(1) if dtype is object else 1 + 0j
    M = np.empty((n, n), dtype=dtype)
    M[...] = zero
    odd = slice(2, 2 + h)
    even = slice(2 + h, n)
    M[0, 1] = M[1, 0] = one
    M[0, 2:] = one
    M[2:, 0] = one
    M[1, odd] = -a
    M[1, even] = a
    M[odd, 1] = -a
    M[even, 1] = a
    A, B = blocks.A, blocks.B
    ab = a * b
    ab_conj = a * conj_b
    for i in range(h):
        for j in range(h):
            M[2 + i, 2 + j] = a * int(A[i, j])
            M[2 + i, 2 + h + j] = ab * int(B[i, j])
            M[2 + h + i, 2 + j] = ab_conj * int(B[j, i])
            M[2 + h + i, 2 + h + j] = -a * int(A[i, j])
    return M


def _cab_template(q: int) -> np.ndarray:
    a, b = SymExpr.param("a"), SymExpr.param("b")
    return assemble_cab(paley_blocks(q), a, b, b.conj())


def cab_matrix(q: int, a: ParamValue = "a", b: ParamValue = "b") -> DesignMatrix:
    """C(a, b) of order q+1 built on the Paley blocks of GF(q)."""
    template = _cab_template(q)
    M = instantiate(template, {"a": a, "b": b})
    return DesignMatrix("conference", M, meta={"construction": "cab", "q": q})


# ---------------------------------------------------------------------------
# Hadamard constructions


def hadamard_double(C: DesignMatrix, tol: float = IDENTITY_TOL) -> DesignMatrix:
    """[C+I, C*-I; C-I, -C*-I], a Hadamard matrix of twice the order."""
    from .verification import is_conference

    verdict = is_conference(C, tol=tol)
    if not verdict.ok:
        raise NotConference(f"input fails {verdict.identity} (witness {verdict.witness})")
    M = C.entries
    n = C.order
    I = sym_identity(n) if C.is_symbolic else np.eye(n, dtype=complex)
    Ch = dagger(M)
    top = np.concatenate([M + I, Ch - I], axis=1)
    bottom = np.concatenate([M - I, -Ch - I], axis=1)
    H = np.concatenate([top, bottom], axis=0)
    meta = {"construction": "hadamard_double", "source": C.meta} if C.meta else {}
    return DesignMatrix("hadamard", H, list(C.params), meta)


def block_square(H: DesignMatrix, tol: float = IDENTITY_TOL, check: bool = True) -> DesignMatrix:
    """K of order n^2 whose (i, j) block is the outer product h_j^* h_i of rows of H.

    Entry ((i, r), (j, s)) is conj(H[j, r]) * H[i, s].
    """
    if check:
        from .verification import is_hadamard

        verdict = is_hadamard(H, tol=tol)
        if not verdict.ok:
            raise NotHadamard(f"input fails {verdict.identity} (witness {verdict.witness})")
    M = H.entries
    n = H.order
    outer = np.multiply.outer(M, np.conj(M))  # [i, s, j, r] = H[i,s] * conj(H[j,r])
    K = outer.transpose(0, 3, 2, 1).reshape(n * n, n * n)
    if is_symbolic(K):
        K = np.array(K, dtype=object)
    return DesignMatrix("hadamard", K, list(H.params), {"construction": "block_square", "n": n})


def fourier(n: int) -> DesignMatrix:
    """F[k, l] = exp(2*pi*i*k*l/n) for 0-based k, l."""
    if n < 2:
        raise BadOrder("Fourier order must be at least 2")
    F = np.empty((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            r = (k * l) % n
            if (4 * r) % n == 0:
                F[k, l] = 1j ** (4 * r // n)
            else:
                F[k, l] = cmath.exp(2j * math.pi * r / n)
    return DesignMatrix("hadamard", F, [], {"construction": "fourier", "n": n})


def conference_hadamard(C: DesignMatrix) -> DesignMatrix:
    """I + iC, which is Hadamard whenever C is a Hermitian conference matrix."""
    n = C.order
    if C.is_symbolic:
        H = sym_identity(n) + C.entries * SymExpr.const(1j)
    else:
        H = np.eye(n, dtype=complex) + 1j * C.entries
    return DesignMatrix("hadamard", H, list(C.params), {"construction": "i_shift"})


def quaternary(q: int, sign: int = 1) -> DesignMatrix:
    """C(1, sign*i) + sign*i*I, with all entries fourth roots of unity."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    unit = SymExpr.const(sign * 1j)
    C = cab_matrix(q, 1, unit)
    H = C.entries + sym_identity(C.order) * unit
    return DesignMatrix("hadamard", H, [], {"construction": "quaternary", "q": q, "sign": sign})


def skew_to_seidel(C: DesignMatrix) -> DesignMatrix:
    """iC for a real skew-symmetric conference matrix C."""
    M = C.numeric()
    n = C.order
    if np.abs(M.imag).max() > IDENTITY_TOL:
        raise NotSkewConference("matrix is not real")
    R = M.real
    if not np.allclose(R.T, -R, atol=IDENTITY_TOL):
        raise NotSkewConference("matrix is not skew-symmetric")
    if not np.allclose(R @ R.T, (n - 1) * np.eye(n), atol=IDENTITY_TOL):
        raise NotSkewConference("C C^T differs from (n-1) I")
    if C.is_symbolic:
        Q = C.entries * SymExpr.const(1j)
    else:
        Q = 1j * M
    return DesignMatrix("seidel", Q, list(C.params), {"construction": "skew_to_seidel"})


# ---------------------------------------------------------------------------
# explicit Hermitian families of orders 6, 10 and 14

C6_TEMPLATE = [
    "0 1 1 1 1 1",
    "1 0 -1 b 1 -b",
    "1 -1 0 -b 1 b",
    "1 conj(b) -conj(b) 0 -1 1",
    "1 1 1 -1 0 -1",
    "1 -conj(b) conj(b) 1 -1 0",
]

C10_TEMPLATE = [
    "0 1 1 1 1 1 1 1 1 1",
    "1 0 a*conj(b) a conj(c) 1 -conj(c) -a -a*conj(b) -1",
    "1 conj(a)*b 0 -b -conj(c) 1 conj(c) b -1 -conj(a)*b",
    "1 conj(a) -conj(b) 0 1 -1 1 -1 conj(b) -conj(a)",
    "1 c -c 1 0 -1 -1 1 -c c",
    "1 1 1 -1 -1 0 -1 -1 1 1",
    "1 -c c 1 -1 -1 0 1 c -c",
    "1 -conj(a) conj(b) -1 1 -1 1 0 -conj(b) conj(a)",
    "1 -conj(a)*b -1 b -conj(c) 1 conj(c) -b 0 conj(a)*b",
    "1 -1 -a*conj(b) -a conj(c) 1 -conj(c) a a*conj(b) 0",
]

C14_TEMPLATE = [
    "0 1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 0 -1 a*conj(b) -a*conj(b) -conj(c) a conj(e) conj(c) 1 -a -conj(e) a -a",
    "1 -1 0 -a*conj(b) a*conj(b) -conj(c) -a conj(e) conj(c) 1 a -conj(e) -a a",
    "1 conj(a)*b -conj(a)*b 0 -1 b -b -conj(e) b 1 conj(f) conj(e) -b -conj(f)",
    "1 -conj(a)*b conj(a)*b -1 0 -b b -conj(e) -b 1 conj(f) conj(e) b -conj(f)",
    "1 -c -c conj(b) -conj(b) 0 -c*conj(d) c -1 -1 1 c c*conj(d) 1",
    "1 conj(a) -conj(a) -conj(b) conj(b) -d*conj(c) 0 -d*conj(e) d*conj(c) -1 -d*conj(f) d*conj(e) 1 d*conj(f)",
    "1 e e -e -e conj(c) -e*conj(d) 0 -conj(c) 1 -conj(f) -1 e*conj(d) conj(f)",
    "1 c c conj(b) -conj(b) -1 c*conj(d) -c 0 -1 1 -c -c*conj(d) 1",
    "1 1 1 1 1 -1 -1 1 -1 0 -1 1 -1 -1",
    "1 -conj(a) conj(a) f f 1 -f*conj(d) -f 1 -1 0 -f f*conj(d) -1",
    "1 -e -e e e conj(c) e*conj(d) -1 -conj(c) 1 -conj(f) 0 -e*conj(d) conj(f)",
    "1 conj(a) -conj(a) -conj(b) conj(b) d*conj(c) 1 d*conj(e) -d*conj(c) -1 d*conj(f) -d*conj(e) 0 -d*conj(f)",
    "1 -conj(a) conj(a) -f -f 1 f*conj(d) f 1 -1 -1 f -f*conj(d) 0",
]

# pairs of rows (1-based) used to introduce each parameter
C10_ROW_PAIRS = ((2, 10), (3, 9), (5, 7))
C14_ROW_PAIRS = ((2, 3), (4, 5), (6, 9), (7, 13), (8, 12), (11, 14))


def parse_template(rows: list[str]) -> np.ndarray:
    cells = [row.split() for row in rows]
    n = len(cells)
    if any(len(r) != n for r in cells):
        raise ValueError("template is not square")
    return sym_array([[parse_scalar(c) for c in r] for r in cells])


def _family(name: str, rows: list[str], values: dict[str, ParamValue]) -> DesignMatrix:
    M = instantiate(parse_template(rows), values)
    return DesignMatrix("conference", M, meta={"construction": name})


def c6(b: ParamValue = "b") -> DesignMatrix:
    return _family("c6", C6_TEMPLATE, {"b": b})


def c10(a: ParamValue = "a", b: ParamValue = "b", c: ParamValue = "c") -> DesignMatrix:
    return _family("c10", C10_TEMPLATE, {"a": a, "b": b, "c": c})


def c14(
    a: ParamValue = "a",
    b: ParamValue = "b",
    c: ParamValue = "c",
    d: ParamValue = "d",
    e: ParamValue = "e",
    f: ParamValue = "f",
) -> DesignMatrix:
    return _family("c14", C14_TEMPLATE, {"a": a, "b": b, "c": c, "d": d, "e": e, "f": f})


FAMILIES = {"c6": c6, "c10": c10, "c14": c14}


def hermitian_from_symmetric(
    C: DesignMatrix | None = None, family: str | None = None, **params: ParamValue
) -> DesignMatrix:
    """Hermitian conference matrix -i(D - I) from a Hadamard D = I + iC.

    Without ``family`` this is the base case on a real symmetric conference
    matrix ``C`` and returns C itself (recomputed through D).  With
    ``family`` in {"c6", "c10", "c14"} the parametrized matrix is returned.
    """
    if family is not None:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        return FAMILIES[family](**params)
    if C is None:
        raise ValueError("need a conference matrix or a family name")
    from .verification import is_conference

    if not is_conference(C).ok:
        raise NotConference("input is not a conference matrix")
    M = C.numeric()
    if np.abs(M.imag).max() > IDENTITY_TOL or not np.allclose(M, M.T, atol=IDENTITY_TOL):
        raise NotConference("input is not real symmetric")
    D = conference_hadamard(C)
    n = C.order
    if D.is_symbolic:
        out = (D.entries - sym_identity(n)) * SymExpr.const(-1j)
    else:
        out = -1j * (D.entries - np.eye(n))
    return DesignMatrix("conference", out, list(C.params), dict(C.meta))
