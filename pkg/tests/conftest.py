from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from heckedecomp.cli import DATA_DIR, open_group
from heckedecomp.exactnum import Cyclotomic
from heckedecomp.laurent import LaurentPoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

ORDERS = [1, 3, 4, 5, 8, 12, 24]

def _build(n, pairs, den):
    return Cyclotomic.from_coeffs(n, {e % n: Fraction(c, den) for e, c in pairs})


def cyclotomics(orders=ORDERS, max_terms=4):
    pairs = st.lists(st.tuples(st.integers(0, 23), st.integers(-5, 5)), max_size=max_terms)
    return st.builds(_build, st.sampled_from(orders), pairs, st.integers(1, 4))


@st.composite
def nonzero_cyclotomics(draw, orders=ORDERS):
    x = draw(cyclotomics(orders))
    if x.is_zero():
        return Cyclotomic.from_rational(draw(st.integers(1, 5)))
    return x


@st.composite
def laurent_polys(draw, orders=(1, 3, 4, 8), max_terms=4, var="q"):
    exps = draw(st.lists(st.integers(-4, 6), max_size=max_terms))
    return LaurentPoly(var, {e: draw(cyclotomics(orders, 2)) for e in exps})


@pytest.fixture(scope="session")
def g4():
    return open_group(DATA_DIR, "G4")


@pytest.fixture(scope="session")
def g12():
    return open_group(DATA_DIR, "G12")


def frac(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
