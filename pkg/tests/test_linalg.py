from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cyclotomics
from heckedecomp import linalg
from heckedecomp.exactnum import ONE, ZERO, E, as_cyc


def test_identity_and_product():
    a = [[as_cyc(1), E(4)], [ZERO, as_cyc(2)]]
    assert linalg.matmul(linalg.identity(2), a) == a
    assert linalg.trace(a) == as_cyc(3)
    assert linalg.is_scalar(linalg.identity(3)) == ONE
    assert linalg.is_scalar(a) is None


def test_nullspace_and_rank():
    a = [[as_cyc(1), as_cyc(2)], [as_cyc(2), as_cyc(4)]]
    assert linalg.rank(a) == 1
    (v,) = linalg.nullspace(a)
    assert linalg.matvec(a, v) == [ZERO, ZERO]


def test_solve_left():
    basis = [[ONE, ZERO, ONE], [ZERO, ONE, ONE]]
    assert linalg.solve_left(basis, [as_cyc(2), as_cyc(3), as_cyc(5)]) == [as_cyc(2), as_cyc(3)]
    assert linalg.solve_left(basis, [ONE, ONE, ONE]) is None


def test_normalize_line():
    assert linalg.normalize_line([ZERO, E(4), ONE]) == [ZERO, ONE, -E(4)]


@settings(max_examples=300)
@given(st.lists(st.lists(cyclotomics(orders=[1, 4, 8], max_terms=2), min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_is_kernel(rows):
    for v in linalg.nullspace(rows):
        assert all(x.is_zero() for x in linalg.matvec(rows, v))
    assert linalg.rank(rows) + len(linalg.nullspace(rows)) == 3
