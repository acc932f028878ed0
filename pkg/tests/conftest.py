import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tropci.trop_core import TropPoly, full_support

settings.register_profile(
    "repo", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("repo")

DATA = Path(__file__).parent / "data"


def load_poly(name: str) -> TropPoly:
    return TropPoly.from_json(json.loads((DATA / name).read_text()))


@pytest.fixture(scope="session")
def smooth_g():
    return load_poly("g_smooth_1_4.json")


@pytest.fixture(scope="session")
def smooth_g_t3():
    return load_poly("g_smooth_1_4_t3.json")


@pytest.fixture(scope="session")
def smooth_g_deg1():
    return load_poly("g_smooth_1_1.json")


@pytest.fixture(scope="session")
def weak_g():
    return load_poly("g_weak_1_4.json")


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polys(draw, n_vars=2, max_degree=4, min_terms=1):
    support = full_support(n_vars, draw(st.integers(1, max_degree)))
    chosen = draw(st.lists(st.sampled_from(support), min_size=min_terms, max_size=len(support), unique=True))
    coefs = draw(st.lists(rationals, min_size=len(chosen), max_size=len(chosen)))
    return TropPoly(n_vars, dict(zip(chosen, coefs)))


def points(n):
    return st.tuples(*[rationals] * n)


F = Fraction


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
