from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_unit
from confmat.constructions import c6, cab_matrix, fourier, paley_matrix
from confmat.design import DesignMatrix
from confmat.errors import NotHadamard, NotSeidel, RankMismatch, TooLarge
from confmat.frames import (
    Frame,
    block_frame_params,
    frame_from_gram,
    frame_from_seidel,
    gram_from_seidel,
    iterate_block,
    redundancy_sequence,
    verify_frame,
    welch_angle,
)


def test_welch_angle_values():
    assert welch_angle(6, 3) == pytest.approx(1 / (2 * math.sqrt(5)))
    assert welch_angle(36, 21) == pytest.approx(1 / 12)
    for k in (3, 5, 7, 9, 13):
        assert welch_angle(2 * k, k) == pytest.approx(1 / (2 * math.sqrt(2 * k - 1)))


def test_gram_is_rank_k_projection():
    b = cmath.exp(0.7j)
    G = gram_from_seidel(c6(b), 3).entries
    assert np.allclose(G @ G, G, atol=1e-12)
    assert np.allclose(G, G.conj().T)
    assert np.isclose(np.trace(G).real, 3)


def test_frame_gauge_is_pinned():
    G = gram_from_seidel(c6(cmath.exp(0.7j)), 3)
    frame = frame_from_gram(G, 3)
    V = frame.vectors
    assert np.allclose(frame.gram(), G.entries, atol=1e-12)
    top = V[:3]
    assert np.allclose(np.triu(top, 1), 0, atol=1e-14)
    assert np.all(np.abs(np.diag(top).imag) < 1e-14) and np.all(np.diag(top).real > 0)
    # rotating the vectors by a unitary leaves G, hence the result, unchanged
    rng = np.random.default_rng(3)
    U, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    W = V @ U
    assert np.allclose(frame_from_gram(W @ W.conj().T, 3).vectors, V, atol=1e-12)


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25])
def test_paley_route_frames(q, rng):
    k = (q + 1) // 2
    for b in random_unit(rng, 3):
        frame = frame_from_seidel(cab_matrix(q, 1, complex(b)), k)
        assert (frame.n, frame.k) == (q + 1, k)
        v = verify_frame(frame)
        assert v.ok, v


def test_verify_frame_rejects_perturbation():
    frame = frame_from_seidel(c6(1j), 3)
    frame.vectors[2, 1] += 1e-4
    assert not verify_frame(frame).ok


def test_gram_from_seidel_checks_spectrum():
    with pytest.raises(NotSeidel):
        gram_from_seidel(c6(1j), 2)
    with pytest.raises(NotSeidel):
        gram_from_seidel(cab_matrix(5, 1j, 1j), 3)


def test_frame_from_gram_rank_mismatch():
    with pytest.raises(RankMismatch):
        frame_from_gram(np.eye(4), 2)


def test_conjugate_branch():
    Q = -c6(cmath.exp(0.2j)).entries
    frame = frame_from_seidel(Q, 3)
    assert verify_frame(frame).ok


@pytest.mark.parametrize("n0", [2, 3, 4])
def test_block_square_of_fourier_is_seidel(n0):
    Q, params = iterate_block(fourier(n0), 1)
    assert (params.n, params.k) == (n0**2, n0 * (n0 + 1) // 2)
    frame = frame_from_seidel(Q, params.k)
    assert verify_frame(frame).ok
    Qm, pm = iterate_block(fourier(n0), 1, sign=-1)
    assert pm.k == n0 * (n0 - 1) // 2
    assert verify_frame(frame_from_seidel(Qm, pm.k)).ok


def test_iterate_block_errors():
    with pytest.raises(TooLarge):
        iterate_block(fourier(6), 2, max_order=1000)
    with pytest.raises(NotHadamard):
        iterate_block(DesignMatrix("generic", np.ones((3, 3))), 1)
    with pytest.raises(ValueError):
        iterate_block(fourier(3), 0)


def test_block_frame_params():
    assert block_frame_params(6, 1) == block_frame_params(6, 1, 1)
    p = block_frame_params(6, 2)
    assert (p.n, p.k) == (1296, 666)
    p = block_frame_params(6, 1, -1)
    assert (p.n, p.k) == (36, 15)


def test_redundancy_sequence_values():
    assert redundancy_sequence(6, 3) == [Fraction(12, 7), Fraction(72, 37), Fraction(2592, 1297)]


@given(st.integers(2, 40), st.integers(1, 4))
def test_redundancy_increases_towards_two(n0, beta_max):
    seq = redundancy_sequence(n0, beta_max)
    assert all(x < 2 for x in seq)
    assert all(x < y for x, y in zip(seq, seq[1:]))
    for beta, r in enumerate(seq, 1):
        p = block_frame_params(n0, beta)
        assert r == Fraction(p.n, p.k)


def test_frame_json_round_trip():
    frame = frame_from_seidel(paley_matrix(9), 5)
    again = Frame.from_json(json.loads(json.dumps(frame.to_json())))
    assert np.array_equal(again.vectors, frame.vectors)
    assert again.common_angle == frame.common_angle and (again.n, again.k) == (10, 5)
