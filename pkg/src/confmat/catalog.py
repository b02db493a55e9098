"""Feasibility catalog of (2k, k) equiangular Parseval frames for odd k.

A Paley route exists when 2k - 1 = p^alpha is a prime power; for odd k this
prime power is automatically 1 mod 4, so C(1, b) is Hermitian of order 2k.
Orders without such a route are reported as "unknown", never as impossible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .numtheory import prime_power

MAX_K = 10**6

# orders at which the explicit parametric families are available
_FAMILY_ROUTES = {6: "c6", 10: "c10", 14: "c14"}


@dataclass(frozen=True)
class CatalogEntry:
    k: int
    two_k: int
    feasible: str  # "paley" or "unknown"
    witness: tuple[int, int] | None = None  # (p, alpha) with p^alpha = 2k - 1
    routes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.feasible == "paley":
            if self.witness is None:
                raise ValueError("paley entries carry a witness")
            p, alpha = self.witness
            if p**alpha + 1 != self.two_k or self.two_k % 4 != 2:
                raise ValueError(f"witness {p}^{alpha} does not give order {self.two_k}")
        elif self.feasible != "unknown":
            raise ValueError(f"unknown feasibility tag {self.feasible!r}")

    def to_json(self) -> dict[str, Any]:
        witness = None if self.witness is None else {"p": self.witness[0], "alpha": self.witness[1]}
        return {
            "k": self.k,
            "two_k": self.two_k,
            "feasible": self.feasible,
            "witness": witness,
            "routes": list(self.routes),
        }


def catalog_entry(k: int) -> CatalogEntry:
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k={k} must be odd and at least 3")
    pp = prime_power(2 * k - 1)
    if pp is None:
        return CatalogEntry(k, 2 * k, "unknown")
    routes = ["paley", "cab", "hermitian_cab", "quaternary"]
    if 2 * k in _FAMILY_ROUTES:
        routes.append(_FAMILY_ROUTES[2 * k])
    return CatalogEntry(k, 2 * k, "paley", pp, tuple(routes))


def catalog(max_k: int) -> list[CatalogEntry]:
    """Entries for odd k = 3, 5, ..., max_k in increasing order."""
    if max_k > MAX_K:
        raise ValueError(f"max_k={max_k} exceeds {MAX_K}")
    return [catalog_entry(k) for k in range(3, max_k + 1, 2)]


def unknown_orders(entries: list[CatalogEntry]) -> list[int]:
    return [e.k for e in entries if e.feasible == "unknown"]


def catalog_json(max_k: int) -> str:
    """Deterministic serialization: same max_k gives byte-identical text."""
    data = {"max_k": max_k, "entries": [e.to_json() for e in catalog(max_k)]}
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
