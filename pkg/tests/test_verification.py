from __future__ import annotations

import cmath
import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unit
from confmat.constructions import PaleyBlocks, c6, cab_matrix, paley_blocks, paley_matrix
from confmat.design import DesignMatrix
from confmat.errors import NotHermitian, OrderMismatch, ZeroEntryInFirstRow
from confmat.verification import (
    check_paley_blocks,
    check_paley_layout,
    eig_structure,
    is_conference,
    is_hadamard,
    is_hermitian,
    normalize,
    permutation_equivalent,
    real_necessary_conditions,
    seidel_check,
    seidel_spectrum,
)


def _switching_fits(M: np.ndarray, Q: np.ndarray, tol: float = 1e-8) -> bool:
    """Is there a unimodular diagonal D with D M D^* = Q?"""
    d = np.ones(len(M), dtype=complex)
    d[1:] = np.conj(Q[0, 1:] / M[0, 1:])  # from M[0, v] conj(d_v) = Q[0, v]
    return np.abs(d[:, None] * M * d.conj()[None, :] - Q).max() <= tol


def _brute_force_equivalent(A: np.ndarray, B: np.ndarray) -> tuple[int, ...] | None:
    n = len(A)
    for perm in permutations(range(n)):
        idx = np.array(perm)
        if _switching_fits(A[np.ix_(idx, idx)], B):
            return perm
    return None


def c6n(b: complex) -> np.ndarray:
    return c6(complex(b)).entries


B_VALUES = [1, -1, 1j, -1j, cmath.exp(1j * math.pi / 7), cmath.exp(0.4j), cmath.exp(2j)]


@pytest.mark.parametrize("b", B_VALUES)
def test_equivalence_to_conjugate_matches_brute_force(b):
    A, B = c6n(b), np.conj(c6n(b))
    expected = _brute_force_equivalent(A, B)
    result = permutation_equivalent(A, B)
    assert result.equivalent == (expected is not None)
    assert result.certificate == "exhaustive"
    if expected is not None:
        # the search returns the lexicographically smallest witness
        assert result.permutation == expected


@pytest.mark.parametrize("b", B_VALUES)
def test_equivalence_to_negated_parameter(b):
    result = permutation_equivalent(c6n(b), c6n(-b))
    assert result.equivalent
    idx = np.array(result.permutation)
    assert _switching_fits(c6n(b)[np.ix_(idx, idx)], c6n(-b))


def test_conjugate_equivalence_only_at_quarter_turns():
    for b in B_VALUES:
        eq = permutation_equivalent(c6n(b), np.conj(c6n(b))).equivalent
        assert eq == (b in (1, -1, 1j, -1j))


def test_cab_at_one_is_c6_of_conjugate():
    b = cmath.exp(0.9j)
    C = cab_matrix(5, 1, b).entries
    result = permutation_equivalent(C, c6n(b.conjugate()))
    assert result.equivalent and result.one_line() == "1 5 6 4 2 3"
    assert not permutation_equivalent(C, c6n(b)).equivalent


def test_self_equivalence_has_identity_witness():
    A = c6n(cmath.exp(0.3j))
    result = permutation_equivalent(A, A)
    assert result.equivalent and result.permutation == tuple(range(6))


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(6)), st.lists(st.floats(0, 6.28), min_size=6, max_size=6), st.floats(0.1, 3.0))
def test_random_switched_copies_are_found(perm, thetas, t):
    A = c6n(cmath.exp(1j * t))
    d = np.exp(1j * np.array(thetas))
    idx = np.array(perm)
    B = (d[:, None] * A * d.conj()[None, :])[np.ix_(idx, idx)]
    for prune in (False, True):
        result = permutation_equivalent(A, B, prune=prune)
        assert result.equivalent
        w = np.array(result.permutation)
        assert _switching_fits(A[np.ix_(w, w)], B)


def test_pruned_search_on_paley():
    P = paley_matrix(13).numeric()
    rng = np.random.default_rng(5)
    perm = rng.permutation(14)
    result = permutation_equivalent(P, P[np.ix_(perm, perm)])
    assert result.equivalent and result.certificate == "pruned-complete"


def test_equivalence_errors():
    with pytest.raises(OrderMismatch):
        permutation_equivalent(c6n(1j), paley_matrix(9))
    Z = np.zeros((6, 6), dtype=complex)
    with pytest.raises(ZeroEntryInFirstRow):
        permutation_equivalent(Z, c6n(1j))
    result = permutation_equivalent(c6n(1j), np.conj(c6n(1j)), budget=1)
    assert result.certificate == "budget-exhausted" and not result.equivalent


def test_normalize_first_row():
    N = normalize(c6n(cmath.exp(0.5j))).entries
    assert np.allclose(N[0, 1:], 1) and N[0, 0] == 0


def test_corrupted_conference_witness_is_one_based():
    C = paley_matrix(5).numeric()
    C[2, 4] *= -1
    v = is_conference(C)
    assert not v.ok and v.witness is not None and min(v.witness) >= 1
    assert 3 in v.witness


def test_entry_checks():
    C = paley_matrix(5).numeric()
    C[1, 1] = 1
    assert is_conference(C).identity == "zero_diagonal" or not is_conference(C).ok
    H = np.ones((2, 2), dtype=complex)
    H[1, 1] = -1
    assert is_hadamard(H).ok
    H[0, 1] = 0.5
    assert not is_hadamard(H).ok


def test_paley_block_identities_detect_corruption():
    blocks = paley_blocks(13)
    assert check_paley_blocks(blocks).ok
    B = blocks.B.copy()
    B[0, 0] *= -1
    bad = check_paley_blocks(PaleyBlocks(blocks.k, blocks.A, B))
    assert not bad.ok and bad.identity == "BJ=0"
    assert check_paley_layout(paley_matrix(29)).ok
    assert not check_paley_layout(cab_matrix(5, 1, 1j)).ok


def test_seidel_check_exact_and_numeric():
    C = cab_matrix(13, 1, "b")
    assert seidel_check(C, 7).ok
    assert not seidel_check(C, 6).ok
    assert seidel_check(C, 7, assignment={"b": cmath.exp(1.1j)}).ok
    fail, k, _ = seidel_spectrum(paley_matrix(9))
    assert fail is None and k == 5


def test_seidel_check_rejects_three_eigenvalues():
    Q = np.ones((4, 4)) - np.eye(4)
    Q[0, 1] = Q[1, 0] = -1
    assert not seidel_check(Q, 2).ok
    assert not seidel_check(cab_matrix(5), 3).ok  # not Hermitian


def test_eig_structure_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eig_structure(cab_matrix(5).numeric({"a": 1j, "b": 1}))


def test_is_hermitian_symbolic():
    assert is_hermitian(c6()).ok
    assert not is_hermitian(cab_matrix(5)).ok


@pytest.mark.parametrize(
    "n, symmetric, ok",
    [(6, True, True), (10, True, True), (14, True, True), (22, True, False), (34, True, False), (8, True, False),
     (4, False, True), (12, False, True), (6, False, False)],
)
def test_real_necessary_conditions(n, symmetric, ok):
    assert real_necessary_conditions(n, symmetric).ok == ok


def test_switching_preserves_conference(rng):
    C = cab_matrix(9, complex(random_unit(rng)), complex(random_unit(rng))).entries
    d = random_unit(rng, 10)
    S = d[:, None] * C * d.conj()[None, :]
    assert is_conference(S, tol=1e-12).ok


def test_conference_design_matrix_validation():
    with pytest.raises(ValueError, match=r"\(1,1\)"):
        DesignMatrix("conference", np.eye(3))
