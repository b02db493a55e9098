"""The DesignMatrix container shared by constructions, verification and the CLI.

Entries live in a numpy array: ``dtype=object`` holding :class:`SymExpr` in
symbolic mode, ``complex128`` in complex mode.  Indices are 0-based in code;
user-facing messages use 1-based indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .scalars import SymExpr, check_assignment, format_scalar, parse_scalar

KINDS = ("conference", "hadamard", "seidel", "gram", "generic")
MODES = ("symbolic", "complex")

_to_sym = np.frompyfunc(SymExpr.coerce, 1, 1)


def sym_array(rows: Any) -> np.ndarray:
    """Object array of SymExpr from a 2-d array or nested lists of SymExpr/int/str."""
    rows = [list(row) for row in rows]
    arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            arr[i, j] = SymExpr.coerce(x)
    return arr


def sym_identity(n: int, scale: int = 1) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out[...] = SymExpr()
    for i in range(n):
        out[i, i] = SymExpr.const(scale)
    return out


def is_symbolic(arr: np.ndarray) -> bool:
    return arr.dtype == object


def dagger(arr: np.ndarray) -> np.ndarray:
    return np.conj(arr).T


def matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = x @ y
    return _to_sym(out).astype(object) if is_symbolic(out) else out


def evaluate_array(arr: np.ndarray, assignment: Mapping[str, complex]) -> np.ndarray:
    if not is_symbolic(arr):
        return np.asarray(arr, dtype=complex)
    names = set().union(*(x.params() for x in arr.flat))
    check_assignment(assignment, names)
    out = np.empty(arr.shape, dtype=complex)
    for idx, x in np.ndenumerate(arr):
        out[idx] = x.eval(assignment)
    return out


def array_params(arr: np.ndarray) -> list[str]:
    if not is_symbolic(arr):
        return []
    return sorted(set().union(*(x.params() for x in arr.flat)))


@dataclass
class DesignMatrix:
    kind: str
    entries: np.ndarray
    params: list[str] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown matrix kind {self.kind!r}")
        arr = self.entries
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"entries must be square, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("order must be at least 2")
        if not is_symbolic(arr):
            self.entries = arr = np.asarray(arr, dtype=complex)
            if not np.all(np.isfinite(arr)):
                raise ValueError("complex entries must be finite")
        if self.kind == "conference":
            for i in range(self.order):
                if _nonzero(arr[i, i]):
                    raise ValueError(f"conference matrix has nonzero diagonal entry ({i + 1},{i + 1})")
        if self.kind == "hadamard":
            for (i, j), x in np.ndenumerate(arr):
                if not _nonzero(x):
                    raise ValueError(f"Hadamard matrix has zero entry ({i + 1},{j + 1})")
        if not self.params:
            self.params = array_params(arr)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def scalar_mode(self) -> str:
        return "symbolic" if is_symbolic(self.entries) else "complex"

    @property
    def is_symbolic(self) -> bool:
        return is_symbolic(self.entries)

    def dagger(self) -> np.ndarray:
        return dagger(self.entries)

    def evaluate(self, assignment: Mapping[str, complex] | None = None) -> DesignMatrix:
        """Complex-mode copy; symbolic parameters are substituted from ``assignment``."""
        if not self.is_symbolic:
            return self
        values = evaluate_array(self.entries, assignment or {})
        return DesignMatrix(self.kind, values, list(self.params), dict(self.meta))

    def numeric(self, assignment: Mapping[str, complex] | None = None) -> np.ndarray:
        return self.evaluate(assignment).entries

    def with_kind(self, kind: str) -> DesignMatrix:
        return DesignMatrix(kind, self.entries, list(self.params), dict(self.meta))

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        if self.is_symbolic:
            rows = [[format_scalar(x) for x in row] for row in self.entries]
        else:
            rows = [[[float(z.real), float(z.imag)] for z in row] for row in self.entries]
        data = {
            "order": self.order,
            "kind": self.kind,
            "scalar_mode": self.scalar_mode,
            "params": list(self.params),
            "entries": rows,
        }
        if self.meta:
            data["meta"] = self.meta
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> DesignMatrix:
        for key in ("order", "kind", "scalar_mode", "params", "entries"):
            if key not in data:
                raise ValueError(f"matrix file lacks the {key!r} field")
        mode = data["scalar_mode"]
        rows = data["entries"]
        n = int(data["order"])
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"entries are not {n}x{n}")
        if mode == "symbolic":
            arr = np.empty((n, n), dtype=object)
            for i, row in enumerate(rows):
                for j, text in enumerate(row):
                    if not isinstance(text, str):
                        raise ValueError(f"symbolic entry ({i + 1},{j + 1}) is not a string")
                    arr[i, j] = parse_scalar(text)
        elif mode == "complex":
            arr = np.empty((n, n), dtype=complex)
            for i, row in enumerate(rows):
                for j, pair in enumerate(row):
                    if not (isinstance(pair, list) and len(pair) == 2):
                        raise ValueError(f"complex entry ({i + 1},{j + 1}) is not a [re, im] pair")
                    arr[i, j] = complex(float(pair[0]), float(pair[1]))
        else:
            raise ValueError(f"unknown scalar_mode {mode!r}")
        return cls(str(data["kind"]), arr, list(data["params"]), dict(data.get("meta", {})))


def _nonzero(x: Any) -> bool:
    if isinstance(x, SymExpr):
        return not x.is_zero()
    return not math.isclose(abs(complex(x)), 0.0, abs_tol=1e-12)
