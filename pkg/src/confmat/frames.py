"""Equiangular Parseval frames from two-eigenvalue Seidel matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from .constructions import block_square
from .design import DesignMatrix, sym_identity
from .errors import NotHadamard, NotSeidel, RankMismatch, TooLarge
from .verification import Verdict, is_hadamard, seidel_check

MAX_FRAME_ORDER = 2048
RANK_TOL = 1e-6


@dataclass
class Frame:
    """n vectors in C^k stored as the rows of ``vectors`` (shape n x k).

    ``vectors @ vectors.conj().T`` is the Gram matrix and
    ``vectors.conj().T @ vectors`` is the frame operator.
    """

    n: int
    k: int
    vectors: np.ndarray
    common_angle: float

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.conj().T

    @property
    def redundancy(self) -> Fraction:
        return Fraction(self.n, self.k)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "common_angle": self.common_angle,
            "vectors": [[[float(z.real), float(z.imag)] for z in row] for row in self.vectors],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Frame:
        for key in ("n", "k", "common_angle", "vectors"):
            if key not in data:
                raise ValueError(f"frame file lacks the {key!r} field")
        n, k = int(data["n"]), int(data["k"])
        rows = data["vectors"]
        if len(rows) != n or any(len(r) != k for r in rows):
            raise ValueError(f"vectors are not {n} rows of length {k}")
        V = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows], dtype=complex)
        return cls(n, k, V, float(data["common_angle"]))


@dataclass(frozen=True)
class FrameParams:
    n: int
    k: int
    beta: int
    sign: int


def welch_angle(n: int, k: int) -> float:
    """Common |<f_i, f_j>| of an equiangular Parseval (n, k) frame."""
    if n < 2:
        return 0.0
    return math.sqrt(k * (n - k) / (n * n * (n - 1)))


def gram_from_seidel(
    Q: DesignMatrix | np.ndarray,
    k: int,
    assignment: Mapping[str, complex] | None = None,
    check: bool = True,
) -> DesignMatrix:
    """G = (k/n) I + sqrt(k(n-k) / (n^2 (n-1))) Q."""
    if not isinstance(Q, DesignMatrix):
        Q = DesignMatrix("seidel", np.asarray(Q))
    if check:
        verdict = seidel_check(Q, k, assignment=assignment)
        if not verdict.ok:
            raise NotSeidel(f"not an (n={Q.order}, k={k}) Seidel matrix: {verdict.identity} {verdict.detail}")
    arr = Q.numeric(assignment)
    n = arr.shape[0]
    G = (k / n) * np.eye(n) + welch_angle(n, k) * arr
    return DesignMatrix("gram", G, meta={"n": n, "k": k})


def frame_from_gram(G: DesignMatrix | np.ndarray, k: int) -> Frame:
    """Factor a rank-k projection as G = V V^* with a pinned gauge.

    The rows of V are the frame vectors.  The gauge is fixed by choosing the
    first k linearly independent rows S (in index order) and requiring V[S]
    to be lower triangular with positive diagonal; that is V = G[:, S] L^{-*}
    with L the Cholesky factor of G[S, S].  The result depends on G alone,
    not on eigensolver internals.
    """
    arr = G.numeric() if isinstance(G, DesignMatrix) else np.asarray(G, dtype=complex)
    n = arr.shape[0]
    vals = np.linalg.eigvalsh((arr + arr.conj().T) / 2)
    near_one = int(np.sum(np.abs(vals - 1) < RANK_TOL))
    near_zero = int(np.sum(np.abs(vals) < RANK_TOL))
    if near_one != k or near_zero != n - k:
        raise RankMismatch(f"expected a rank-{k} projection, eigenvalues {vals.min():.3g}..{vals.max():.3g}")
    chosen: list[int] = []
    L = np.zeros((0, 0), dtype=complex)
    for i in range(n):
        if len(chosen) == k:
            break
        if chosen:
            w = np.linalg.solve(L, arr[chosen, i])
            d = arr[i, i].real - np.vdot(w, w).real
        else:
            w = np.zeros(0, dtype=complex)
            d = arr[i, i].real
        if d > RANK_TOL:
            m = len(chosen)
            L2 = np.zeros((m + 1, m + 1), dtype=complex)
            L2[:m, :m] = L
            L2[m, :m] = w.conj()
            L2[m, m] = math.sqrt(d)
            L = L2
            chosen.append(i)
    if len(chosen) != k:
        raise RankMismatch(f"found only {len(chosen)} independent rows, expected {k}")
    V = np.linalg.solve(L.conj(), arr[:, chosen].T).T  # G[:, S] @ inv(L^*)
    return Frame(n, k, V, welch_angle(n, k))


def verify_frame(
    frame: Frame, tol: float = 1e-8, parseval_tol: float = 1e-9
) -> Verdict:
    """Uniform norms k/n, equiangularity at ``common_angle`` and V^* V = I_k."""
    V = frame.vectors
    n, k = frame.n, frame.k
    if V.shape != (n, k):
        return Verdict(False, "shape", float("nan"), detail=f"vectors have shape {V.shape}")
    norms = np.sum(np.abs(V) ** 2, axis=1)
    dev = np.abs(norms - k / n)
    if dev.max() > parseval_tol:
        i = int(np.argmax(dev))
        return Verdict(False, "uniform_norm", float(dev.max()), (i + 1,))
    G = frame.gram()
    off = np.abs(G)[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    dev = np.abs(off - frame.common_angle)
    if dev.max() > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        return Verdict(False, "equiangular", float(dev.max()), (int(i) + 1, int(j) + (j >= i) + 1))
    P = V.conj().T @ V - np.eye(k)
    res = float(np.abs(P).max())
    if res > parseval_tol:
        return Verdict(False, "parseval", res)
    return Verdict(True, "equiangular_parseval_frame", res)


def frame_from_seidel(
    Q: DesignMatrix | np.ndarray, k: int, assignment: Mapping[str, complex] | None = None
) -> Frame:
    return frame_from_gram(gram_from_seidel(Q, k, assignment), k)


def block_frame_params(n0: int, beta: int, sign: int = 1) -> FrameParams:
    """(n, k) after beta block squarings of a Hadamard matrix of order n0."""
    root = n0 ** (2 ** (beta - 1))
    n = root * root
    k = root * (root + sign) // 2
    return FrameParams(n, k, beta, sign)


def iterate_block(
    H0: DesignMatrix,
    beta: int,
    sign: int = 1,
    max_order: int = MAX_FRAME_ORDER,
    tol: float = 1e-10,
) -> tuple[DesignMatrix, FrameParams]:
    """Apply the block square beta times and return the Seidel matrix K - I.

    ``sign=-1`` returns -(K - I), the Seidel matrix of the conjugate frame.
    """
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n0 = H0.order
    params = block_frame_params(n0, beta, sign)
    if params.n > max_order:
        raise TooLarge(f"order {params.n} exceeds {max_order}")
    verdict = is_hadamard(H0, tol=tol)
    if not verdict.ok:
        raise NotHadamard(f"seed fails {verdict.identity} (witness {verdict.witness})")
    K = H0
    for _ in range(beta):
        K = block_square(K, check=False)
    n = K.order
    I = sym_identity(n) if K.is_symbolic else np.eye(n)
    Q = (K.entries - I) * sign
    meta = {"construction": "iterate_block", "n0": n0, "beta": beta, "sign": sign}
    return DesignMatrix("seidel", Q, list(K.params), meta), params


def redundancy_sequence(n0: int, beta_max: int) -> list[Fraction]:
    """n/k of the block-iterated frames for beta = 1..beta_max: 2m/(m+1), m = n0^(2^(beta-1))."""
    if n0 < 2:
        raise ValueError("n0 must be at least 2")
    out = []
    for beta in range(1, beta_max + 1):
        m = n0 ** (2 ** (beta - 1))
        out.append(Fraction(2 * m, m + 1))
    return out

