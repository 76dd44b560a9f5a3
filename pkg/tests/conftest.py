import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ujgrade.jordan import UTMatrix, slots

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def ut_matrices(draw, n):
    return UTMatrix(n, {s: draw(small_fractions) for s in slots(n)})


@st.composite
def invertible_ut(draw, n):
    entries = {}
    for i, j in slots(n):
        if i == j:
            entries[(i, j)] = draw(small_fractions.filter(bool))
        else:
            entries[(i, j)] = draw(small_fractions)
    return UTMatrix(n, entries)


def random_invertible(n: int, rng: random.Random) -> UTMatrix:
    """Unit-scale rational upper triangular matrix with nonzero diagonal."""
    entries = {}
    for i, j in slots(n):
        if i == j:
            entries[(i, j)] = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2, 3]))
        else:
            entries[(i, j)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return UTMatrix(n, entries)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
