"""Verdicts for the defining identities, spectra, and switching equivalence.

Symbolic matrices are checked exactly (residual 0 or a failing verdict);
complex matrices are checked against an absolute tolerance on the largest
entrywise deviation.  Witness indices in verdicts are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from .constructions import PaleyBlocks, assemble_cab, blocks_of
from .design import DesignMatrix, dagger, is_symbolic, matmul
from .errors import NotHermitian, OrderMismatch, ZeroEntryInFirstRow
from .numtheory import is_sum_of_two_squares, iroot, two_squares

IDENTITY_TOL = 1e-10
EQUIV_TOL = 1e-8
EIG_GAP = 1e-6
LABEL_TOL = 1e-6


@dataclass
class Verdict:
    ok: bool
    identity: str
    residual: float = 0.0
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        data = {
            "ok": self.ok,
            "identity": self.identity,
            "residual": self.residual,
            "witness": list(self.witness) if self.witness is not None else None,
        }
        if self.detail:
            data["detail"] = self.detail
        return data

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class EigStructure:
    eigenvalues: list[float]
    multiplicities: list[int]
    two_valued: bool


@dataclass
class EquivalenceResult:
    equivalent: bool
    permutation: tuple[int, ...] | None
    certificate: str  # "exhaustive" | "pruned-complete" | "budget-exhausted"
    nodes: int = 0

    def one_line(self) -> str | None:
        """Witness permutation in 1-based one-line notation."""
        if self.permutation is None:
            return None
        return " ".join(str(p + 1) for p in self.permutation)


# ---------------------------------------------------------------------------
# helpers


def _as_array(M: DesignMatrix | np.ndarray) -> np.ndarray:
    return M.entries if isinstance(M, DesignMatrix) else np.asarray(M)


def _gaussian_parts(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Integer real/imaginary parts if every symbolic entry is a constant."""
    n, m = arr.shape
    re = np.zeros((n, m), dtype=np.int64)
    im = np.zeros((n, m), dtype=np.int64)
    for (i, j), x in np.ndenumerate(arr):
        if not x.is_constant():
            return None
        if x.terms:
            re[i, j] = x.terms[0].coeff.re
            im[i, j] = x.terms[0].coeff.im
    return re, im


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    return tuple(int(v) + 1 for v in idx[0]) if len(idx) else None


def gram_residual(arr: np.ndarray, scale: int) -> tuple[float, tuple[int, ...] | None]:
    """Deviation of arr @ arr^* from scale * I: (residual, first failing entry)."""
    n = arr.shape[0]
    if is_symbolic(arr):
        parts = _gaussian_parts(arr)
        if parts is not None:
            re, im = parts
            # (re + i im)(re - i im)^T
            pr = re @ re.T + im @ im.T
            pi = im @ re.T - re @ im.T
            pr = pr - scale * np.eye(n, dtype=np.int64)
            dev = np.abs(pr) + np.abs(pi)
            return float(dev.max()), _first(dev > 0)
        P = matmul(arr, dagger(arr))
        worst, witness = 0, None
        for (i, j), x in np.ndenumerate(P):
            d = x - (scale if i == j else 0)
            b = d.coefficient_bound()
            if b and witness is None:
                witness = (i + 1, j + 1)
            worst = max(worst, b)
        return float(worst), witness
    P = arr @ arr.conj().T - scale * np.eye(n)
    dev = np.abs(P)
    worst = float(dev.max())
    return worst, _first(dev == worst) if worst > 0 else None


def _entry_checks(arr: np.ndarray, tol: float, zero_diag: bool) -> Verdict | None:
    """Zero diagonal (optional) and unimodular entries elsewhere; None when fine."""
    n = arr.shape[0]
    if is_symbolic(arr):
        for (i, j), x in np.ndenumerate(arr):
            if zero_diag and i == j:
                if not x.is_zero():
                    return Verdict(False, "zero_diagonal", float(x.coefficient_bound()), (i + 1, j + 1))
            elif not x.is_unimodular():
                return Verdict(False, "unimodular_entries", float("nan"), (i + 1, j + 1), f"entry {x}")
        return None
    mod = np.abs(arr)
    if zero_diag:
        d = np.diag(mod)
        if d.max() > tol:
            i = int(np.argmax(d))
            return Verdict(False, "zero_diagonal", float(d.max()), (i + 1, i + 1))
        off = mod + np.eye(n)
    else:
        off = mod
    dev = np.abs(off - 1.0)
    if dev.max() > tol:
        return Verdict(False, "unimodular_entries", float(dev.max()), _first(dev == dev.max()))
    return None


# ---------------------------------------------------------------------------
# identities


def is_conference(M: DesignMatrix | np.ndarray, tol: float = IDENTITY_TOL) -> Verdict:
    """Zero diagonal, unimodular off-diagonal entries and C C^* = (n-1) I."""
    arr = _as_array(M)
    n = arr.shape[0]
    bad = _entry_checks(arr, tol, zero_diag=True)
    if bad is not None:
        return bad
    res, witness = gram_residual(arr, n - 1)
    ok = res == 0 if is_symbolic(arr) else res <= tol
    return Verdict(ok, "CC*=(n-1)I", res, None if ok else witness)


def is_hadamard(M: DesignMatrix | np.ndarray, tol: float = IDENTITY_TOL) -> Verdict:
    arr = _as_array(M)
    n = arr.shape[0]
    bad = _entry_checks(arr, tol, zero_diag=False)
    if bad is not None:
        return bad
    res, witness = gram_residual(arr, n)
    ok = res == 0 if is_symbolic(arr) else res <= tol
    return Verdict(ok, "HH*=nI", res, None if ok else witness)


def is_hermitian(M: DesignMatrix | np.ndarray, tol: float = IDENTITY_TOL) -> Verdict:
    arr = _as_array(M)
    if is_symbolic(arr):
        n = arr.shape[0]
        for i in range(n):
            for j in range(i, n):
                if arr[i, j] != arr[j, i].conj():
                    return Verdict(False, "hermitian", float("nan"), (i + 1, j + 1))
        return Verdict(True, "hermitian")
    dev = np.abs(arr - arr.conj().T)
    worst = float(dev.max())
    ok = worst <= tol
    return Verdict(ok, "hermitian", worst, None if ok else _first(dev == worst))


def check_paley_blocks(blocks: PaleyBlocks) -> Verdict:
    """Exact integer check of the A/B block identities.

    A^T = A, AJ = J, BJ = JB = 0, AB = BA, BB^T = B^T B, A^2 + BB^T = (2k-1)I - 2J.
    """
    A = np.asarray(blocks.A, dtype=np.int64)
    B = np.asarray(blocks.B, dtype=np.int64)
    h = blocks.k - 1
    J = np.ones((h, h), dtype=np.int64)
    I = np.eye(h, dtype=np.int64)
    checks = [
        ("A^T=A", A.T, A),
        ("AJ=J", A @ J, J),
        ("BJ=0", B @ J, 0 * J),
        ("JB=0", J @ B, 0 * J),
        ("AB=BA", A @ B, B @ A),
        ("BB^T=B^TB", B @ B.T, B.T @ B),
        ("A^2+BB^T=(2k-1)I-2J", A @ A + B @ B.T, (2 * blocks.k - 1) * I - 2 * J),
    ]
    worst = 0
    for name, lhs, rhs in checks:
        diff = np.abs(lhs - rhs)
        if diff.max() > 0:
            return Verdict(False, name, float(diff.max()), _first(diff > 0))
        worst = max(worst, int(diff.max()))
    return Verdict(True, "paley_blocks", float(worst))


def check_paley_layout(M: DesignMatrix) -> Verdict:
    """The matrix equals [0 1 j j; 1 0 -j j; j -j A B; j j B^T -A] for its own A, B."""
    parts = _gaussian_parts(M.entries) if M.is_symbolic else None
    if parts is None or parts[1].any():
        return Verdict(False, "paley_layout", float("nan"), detail="matrix is not an integer matrix")
    C = parts[0]
    if C.shape[0] % 4 != 2:
        return Verdict(False, "paley_layout", float("nan"), detail="order is not 2 mod 4")
    blocks = blocks_of(C)
    expected = assemble_cab(blocks, 1 + 0j, 1 + 0j, 1 + 0j).real.astype(np.int64)
    diff = np.abs(C - expected)
    ok = not diff.any()
    return Verdict(ok, "paley_layout", float(diff.max()), None if ok else _first(diff > 0))


# ---------------------------------------------------------------------------
# spectra


def _numeric(M: DesignMatrix | np.ndarray, assignment: Mapping[str, complex] | None) -> np.ndarray:
    if isinstance(M, DesignMatrix):
        return M.numeric(assignment)
    arr = np.asarray(M)
    if is_symbolic(arr):
        return DesignMatrix("generic", arr).numeric(assignment)
    return arr.astype(complex)


def cluster_eigenvalues(values: np.ndarray, gap: float = EIG_GAP) -> tuple[list[float], list[int]]:
    vals = np.sort(np.asarray(values, dtype=float))
    groups: list[list[float]] = [[vals[0]]]
    for v in vals[1:]:
        prev = groups[-1][-1]
        if v - prev > gap * (1 + abs(prev)):
            groups.append([v])
        else:
            groups[-1].append(v)
    return [float(np.mean(g)) for g in groups], [len(g) for g in groups]


def eig_structure(
    Q: DesignMatrix | np.ndarray,
    assignment: Mapping[str, complex] | None = None,
    gap: float = EIG_GAP,
    tol: float = IDENTITY_TOL,
) -> EigStructure:
    arr = _numeric(Q, assignment)
    if np.abs(arr - arr.conj().T).max() > tol:
        raise NotHermitian("matrix is not Hermitian")
    vals = np.linalg.eigvalsh(arr)
    means, mults = cluster_eigenvalues(vals, gap)
    return EigStructure(means, mults, len(means) == 2)


def _seidel_exact(arr: np.ndarray) -> tuple[Verdict | None, int | None, str]:
    n = arr.shape[0]
    Q2 = matmul(arr, arr)
    s_expr = Q2[0, 1] * arr[0, 1].conj()
    if not s_expr.is_constant() or (s_expr.terms and s_expr.terms[0].coeff.im):
        fail = Verdict(False, "Q^2=sQ+(n-1)I", float("nan"), (1, 2), f"Q^2[1,2]/Q[1,2] = {s_expr}")
        return fail, None, ""
    s = s_expr.terms[0].coeff.re if s_expr.terms else 0
    for (i, j), x in np.ndenumerate(Q2):
        d = x - arr[i, j] * s - (n - 1 if i == j else 0)
        if not d.is_zero():
            return Verdict(False, "Q^2=sQ+(n-1)I", float(d.coefficient_bound()), (i + 1, j + 1)), None, ""
    disc = s * s + 4 * (n - 1)
    root = iroot(disc, 2)
    # trace zero fixes the multiplicity of the larger eigenvalue (s + sqrt(disc)) / 2
    if root * root == disc:
        m_plus = Fraction(n * (root - s), 2 * root)
    elif s == 0:
        m_plus = Fraction(n, 2)
    else:
        return Verdict(False, "two_eigenvalues", float("nan"), detail="irrational multiplicity"), None, ""
    if m_plus.denominator != 1:
        return Verdict(False, "two_eigenvalues", float("nan"), detail=f"multiplicity {m_plus}"), None, ""
    detail = f"eigenvalues (s +- sqrt({disc}))/2 with s={s}, multiplicity of the larger {m_plus}"
    return None, int(m_plus), detail


def seidel_spectrum(
    Q: DesignMatrix | np.ndarray,
    tol: float = IDENTITY_TOL,
    assignment: Mapping[str, complex] | None = None,
) -> tuple[Verdict | None, int | None, str]:
    """(failure, k, detail): k is the multiplicity of the larger of two eigenvalues.

    ``failure`` is None exactly when Q is Hermitian, has zero diagonal,
    unimodular off-diagonal entries and exactly two eigenvalues.
    """
    arr = _as_array(Q)
    symbolic = is_symbolic(arr) and not assignment
    if not symbolic:
        arr = _numeric(Q, assignment)
    bad = _entry_checks(arr, tol, zero_diag=True)
    if bad is not None:
        return bad, None, ""
    herm = is_hermitian(arr, tol)
    if not herm.ok:
        return herm, None, ""
    if symbolic:
        return _seidel_exact(arr)
    es = eig_structure(arr, tol=tol)
    if not es.two_valued:
        fail = Verdict(False, "two_eigenvalues", float(len(es.eigenvalues)), detail=f"eigenvalues {es.eigenvalues}")
        return fail, None, ""
    return None, es.multiplicities[1], f"eigenvalues {es.eigenvalues} with multiplicities {es.multiplicities}"


def seidel_check(
    Q: DesignMatrix | np.ndarray,
    k: int,
    tol: float = IDENTITY_TOL,
    assignment: Mapping[str, complex] | None = None,
) -> Verdict:
    """Q is a Seidel matrix with two eigenvalues, the larger of multiplicity k.

    Symbolic input without an assignment is decided exactly through the
    identity Q^2 = sQ + (n-1)I with integer s.
    """
    fail, m_plus, detail = seidel_spectrum(Q, tol, assignment)
    if fail is not None:
        return fail
    if m_plus != k:
        detail += f"; expected {k}"
    return Verdict(m_plus == k, "seidel(n,k)", 0.0, None, detail)


# ---------------------------------------------------------------------------
# arithmetic conditions for real conference matrices


def real_necessary_conditions(n: int, symmetric: bool) -> Verdict:
    if n < 2:
        raise ValueError("order must be at least 2")
    if symmetric:
        if n % 4 != 2:
            return Verdict(False, "n=2 mod 4", 1.0, detail=f"{n} mod 4 = {n % 4}")
        if not is_sum_of_two_squares(n - 1):
            return Verdict(False, "n-1=a^2+b^2", 1.0, detail=f"{n - 1} is not a sum of two squares")
        a, b = two_squares(n - 1)
        return Verdict(True, "symmetric_necessary", 0.0, detail=f"{n - 1} = {a}^2 + {b}^2")
    ok = n == 2 or n % 4 == 0
    return Verdict(ok, "skew_necessary", 0.0 if ok else 1.0, detail=f"{n} mod 4 = {n % 4}")


# ---------------------------------------------------------------------------
# switching equivalence


def _normalize_array(Q: np.ndarray, root: int = 0) -> np.ndarray:
    d = Q[root].copy()
    d[root] = 1.0
    mod = np.abs(d)
    if mod.min() < 0.5:
        j = int(np.argmin(mod))
        raise ZeroEntryInFirstRow(f"entry ({root + 1},{j + 1}) is zero")
    d = d / mod
    return d[:, None] * Q * d.conj()[None, :]


def normalize(Q: DesignMatrix | np.ndarray, assignment: Mapping[str, complex] | None = None) -> DesignMatrix:
    """Diagonal switching D Q D^* making every off-diagonal first-row entry 1."""
    arr = _numeric(Q, assignment)
    kind = Q.kind if isinstance(Q, DesignMatrix) else "seidel"
    return DesignMatrix(kind, _normalize_array(arr))


class _Labels:
    """Map unimodular values to integer labels by clustering (label -1: foreign)."""

    def __init__(self, values: np.ndarray, tol: float = LABEL_TOL) -> None:
        reps: list[complex] = []
        for v in values.ravel():
            if not any(abs(v - r) <= tol for r in reps):
                reps.append(complex(v))
        self.reps = np.array(reps, dtype=complex)
        self.tol = tol

    def __call__(self, arr: np.ndarray) -> np.ndarray:
        dist = np.abs(arr[..., None] - self.reps)
        lab = np.argmin(dist, axis=-1)
        lab[np.min(dist, axis=-1) > self.tol] = -1
        return lab


def permutation_equivalent(
    Q1: DesignMatrix | np.ndarray,
    Q2: DesignMatrix | np.ndarray,
    budget: int = 10**7,
    prune: bool | None = None,
    assignment: Mapping[str, complex] | None = None,
) -> EquivalenceResult:
    """Search for pi with normalize(Q1[pi][:, pi]) == normalize(Q2).

    Combines simultaneous row/column permutation with diagonal unimodular
    switching.  The first vertex of the permuted Q1 is the switching root,
    so each root choice gives one normalized copy of Q1 to match.  Candidates
    go in increasing order, making the witness the lexicographically smallest.
    Without pruning (default for n <= 8) only direct entry comparisons cut
    the tree and the certificate is "exhaustive"; with row-multiset pruning
    it is "pruned-complete".
    """
    A = _numeric(Q1, assignment)
    B = _numeric(Q2, assignment)
    n = A.shape[0]
    if B.shape[0] != n:
        raise OrderMismatch(f"orders differ: {n} vs {B.shape[0]}")
    if prune is None:
        prune = n > 8
    N2 = _normalize_array(B)
    labels = _Labels(N2)
    L2 = labels(N2)
    rows2 = [tuple(sorted(r)) for r in L2]
    nodes = 0
    certificate = "pruned-complete" if prune else "exhaustive"

    for root in range(n):
        N1 = _normalize_array(A, root)
        L1 = labels(N1)
        rows1 = [tuple(sorted(r)) for r in L1] if prune else None
        if prune and rows1[root] != rows2[0]:
            continue
        perm = [root]
        used = [False] * n
        used[root] = True
        # iterative DFS over positions 1..n-1
        stack = [0]
        while stack:
            pos = len(perm)
            start = stack[-1]
            found = False
            for u in range(start, n):
                if used[u]:
                    continue
                nodes += 1
                if nodes > budget:
                    return EquivalenceResult(False, None, "budget-exhausted", nodes)
                if prune and rows1[u] != rows2[pos]:
                    continue
                if all(L1[perm[t], u] == L2[t, pos] and L1[u, perm[t]] == L2[pos, t] for t in range(pos)):
                    stack[-1] = u + 1
                    perm.append(u)
                    used[u] = True
                    found = True
                    break
            if not found:
                stack.pop()
                if len(perm) > 1:
                    used[perm.pop()] = False
                continue
            if len(perm) == n:
                idx = np.array(perm)
                if np.abs(N1[np.ix_(idx, idx)] - N2).max() <= EQUIV_TOL:
                    return EquivalenceResult(True, tuple(perm), certificate, nodes)
                used[perm.pop()] = False
                continue
            stack.append(0)
    return EquivalenceResult(False, None, certificate, nodes)

