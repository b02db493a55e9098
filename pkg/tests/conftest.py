from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from confmat.scalars import PARAM_NAMES, GaussianInt, SymExpr

gaussian_ints = st.builds(GaussianInt, st.integers(-5, 5), st.integers(-5, 5))

monomial_keys = st.dictionaries(st.sampled_from(PARAM_NAMES), st.integers(-3, 3), max_size=3).map(
    lambda d: tuple(sorted((n, e) for n, e in d.items() if e))
)

sym_exprs = st.lists(st.tuples(monomial_keys, gaussian_ints), max_size=4).map(SymExpr)

unimodular_monomials = st.tuples(
    monomial_keys, st.sampled_from([GaussianInt(1, 0), GaussianInt(-1, 0), GaussianInt(0, 1), GaussianInt(0, -1)])
).map(lambda kc: SymExpr([kc]))

angles = st.floats(0, 2 * math.pi, allow_nan=False)

assignments = st.fixed_dictionaries({name: angles.map(lambda t: cmath.exp(1j * t)) for name in PARAM_NAMES})


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def random_unit(rng: np.random.Generator, size=None):
    return np.exp(1j * rng.uniform(0, 2 * math.pi, size))


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
