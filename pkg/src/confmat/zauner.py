"""Zauner's (q+1, (q+1)/2) equiangular frames from additive characters.

For odd q the vectors are x_1 = (1, 0, ..., 0) and, for each field element
a_j, x_{j+1} = (1/sqrt(q), sqrt(2/q) psi(b_1 a_j), ..., sqrt(2/q) psi(b_h a_j))
with b_1..b_h the nonzero squares.  Their inner products reduce, through the
quadratic Gauss sum, to a constant times the quadratic character of a_k - a_l,
so the Seidel matrix is a Paley-type matrix: real symmetric when q = 1 mod 4,
i times a real skew matrix when q = 3 mod 4.

All checks here are numeric; element order is 0, eta, ..., eta^(q-1) and the
squares are listed as eta^2, eta^4, ..., eta^(q-1).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .constructions import paley_matrix
from .design import DesignMatrix
from .errors import BadOrder, ClassificationFailed
from .finite_field import (
    FieldElement,
    FieldSpec,
    additive_character,
    field_of_order,
    gauss_sum_closed_form,
    legendre_chi,
)
from .frames import Frame, welch_angle
from .numtheory import prime_power
from .verification import EquivalenceResult, normalize, permutation_equivalent, seidel_check

MAX_Q = 2**10
CLASS_TOL = 1e-8


@dataclass
class ZaunerFamily:
    q: int
    field: FieldSpec
    elements: list[FieldElement]
    squares: list[FieldElement]
    vectors: np.ndarray  # rows x_1..x_{q+1}, shape (q+1, (q+1)/2)


def _field(q: int) -> FieldSpec:
    if q % 2 == 0 or prime_power(q) is None:
        raise BadOrder(f"q={q} is not an odd prime power")
    if q > MAX_Q:
        raise BadOrder(f"q={q} exceeds {MAX_Q}")
    return field_of_order(q)


def zauner_vectors(q: int) -> ZaunerFamily:
    F = _field(q)
    elements = F.power_order()
    squares = F.nonzero_squares()
    h = (q - 1) // 2
    X = np.zeros((q + 1, h + 1), dtype=complex)
    X[0, 0] = 1.0
    w = math.sqrt(2 / q)
    for j, a in enumerate(elements):
        X[j + 1, 0] = 1 / math.sqrt(q)
        for s, b in enumerate(squares):
            X[j + 1, s + 1] = w * additive_character(F, F.mul(b, a))
    return ZaunerFamily(q, F, elements, squares, X)


def zauner_gram(q: int) -> DesignMatrix:
    """Gram matrix G[k, l] = <x_k, x_l> (linear in the first slot)."""
    X = zauner_vectors(q).vectors
    return DesignMatrix("gram", X @ X.conj().T, meta={"construction": "zauner", "q": q})


def inner_product_constant(q: int) -> complex:
    """c with <x_k, x_l> = c * chi(a_k - a_l) for 2 <= k != l: the Gauss sum over q."""
    p, m = prime_power(q)
    return gauss_sum_closed_form(p, m) / q


def zauner_gram_closed_form(q: int) -> np.ndarray:
    """The Gram matrix predicted by the Gauss-sum evaluation."""
    F = _field(q)
    elements = F.power_order()
    c = inner_product_constant(q)
    n = q + 1
    G = np.eye(n, dtype=complex)
    G[0, 1:] = G[1:, 0] = 1 / math.sqrt(q)
    for k, ak in enumerate(elements):
        for l, al in enumerate(elements):
            if k != l:
                G[k + 1, l + 1] = c * legendre_chi(F, F.sub(ak, al))
    return G


def zauner_frame(q: int) -> Frame:
    """The Zauner vectors scaled by 1/sqrt(2) into a Parseval (q+1, (q+1)/2) frame."""
    X = zauner_vectors(q).vectors
    n, k = X.shape
    return Frame(n, k, X * math.sqrt(k / n), welch_angle(n, k))


def _histogram(values: np.ndarray) -> dict[str, int]:
    return dict(Counter(f"{complex(np.round(v, 6))}" for v in values.ravel()))


def zauner_seidel(q: int, cross_check: bool = True) -> tuple[DesignMatrix, str]:
    """Seidel matrix sqrt(q) (G - I) and its class.

    The class is ``real_symmetric_conference`` when the first-row normalized
    form has only +-1 entries, ``i_times_real_skew`` when the entries off the
    first row and column are +-i (the first row is then moved to i by the
    switching diag(i, 1, ..., 1)).  The gauge used and, for q = 1 mod 4 with
    q <= 13, the equivalence to the Paley matrix are recorded in ``meta``.
    """
    G = zauner_gram(q).entries
    n = q + 1
    Q = math.sqrt(q) * (G - np.eye(n))
    seidel = DesignMatrix("seidel", Q, meta={"construction": "zauner", "q": q})
    verdict = seidel_check(seidel, n // 2)
    if not verdict.ok:
        raise ClassificationFailed(f"not a Seidel matrix: {verdict.identity}", _histogram(Q))
    N = normalize(seidel).entries
    inner = N[1:, 1:][~np.eye(n - 1, dtype=bool)]
    if np.all(np.abs(np.abs(inner.real) - 1) < CLASS_TOL) and np.all(np.abs(inner.imag) < CLASS_TOL):
        S = N.real
        if not (np.allclose(S, S.T, atol=CLASS_TOL) and np.allclose(S @ S.T, (n - 1) * np.eye(n), atol=1e-8)):
            raise ClassificationFailed("real entries but not a symmetric conference matrix", _histogram(N))
        kind = "real_symmetric_conference"
        gauge = "first row normalized to 1"
    elif np.all(np.abs(np.abs(inner.imag) - 1) < CLASS_TOL) and np.all(np.abs(inner.real) < CLASS_TOL):
        d = np.ones(n, dtype=complex)
        d[0] = 1j
        S = (-1j * (d[:, None] * N * d.conj()[None, :])).real
        if not (np.allclose(S, -S.T, atol=CLASS_TOL) and np.allclose(S @ S.T, (n - 1) * np.eye(n), atol=1e-8)):
            raise ClassificationFailed("imaginary entries but not i times a skew conference matrix", _histogram(N))
        kind = "i_times_real_skew"
        gauge = "first row normalized to 1, then diag(i, 1, ..., 1)"
    else:
        raise ClassificationFailed("entries are neither all real nor all imaginary", _histogram(N))
    seidel.meta.update({"classification": kind, "gauge": gauge})
    if cross_check and kind == "real_symmetric_conference" and q % 4 == 1 and q <= 13:
        eq = paley_equivalence(q, seidel)
        seidel.meta["paley_equivalence"] = {
            "equivalent": eq.equivalent,
            "permutation": eq.one_line(),
            "certificate": eq.certificate,
        }
    return seidel, kind


def paley_equivalence(q: int, seidel: DesignMatrix | None = None) -> EquivalenceResult:
    """Switching/permutation search between the Zauner Seidel matrix and paley_matrix(q)."""
    if seidel is None:
        G = zauner_gram(q).entries
        seidel = DesignMatrix("seidel", math.sqrt(q) * (G - np.eye(q + 1)))
    return permutation_equivalent(seidel, paley_matrix(q))
