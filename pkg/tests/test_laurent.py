import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laurent_polys
from heckedecomp.exactnum import E, RootOfUnity, as_cyc
from heckedecomp.laurent import (
    FactoredPoly,
    InexactDivisionError,
    LaurentPoly,
    VariableMismatchError,
    ZeroPolynomialError,
    cyclotomic_poly,
    divide_out_root,
    evaluate,
    exact_div,
    lp_arith,
    lp_eval,
    lp_valuation,
    poly_gcd,
    substitute_power,
    vanishing_order,
)

q = LaurentPoly.monomial(1)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == q - 1
    assert cyclotomic_poly(2) == q + 1
    assert cyclotomic_poly(4) == q ** 2 + 1
    assert cyclotomic_poly(12) == q ** 4 - q ** 2 + 1
    for d in (3, 8, 12, 24):
        assert evaluate(cyclotomic_poly(d), RootOfUnity(d, 1)).is_zero()


def test_valuation_and_degree():
    p = LaurentPoly.from_list([3, 0, 1], shift=-2)
    assert lp_valuation(p) == -2
    assert p.degree() == 0
    assert lp_valuation(substitute_power(p, 3, "y")) == -6


def test_evaluate_at_roots_and_numbers():
    p = q ** 2 + 1
    assert lp_eval(p, E(4)).is_zero()
    assert lp_eval(p, RootOfUnity(4, 1)).is_zero()
    assert lp_eval(q ** -1, 2) == as_cyc(1) / 2
    with pytest.raises(ZeroDivisionError):
        lp_eval(q ** -1, 0)


def test_exact_division():
    a = (q - 1) * (q + E(3))
    assert exact_div(a, q - 1) == q + E(3)
    with pytest.raises(InexactDivisionError):
        exact_div(a, q + 2)
    assert exact_div(q ** -3 * (q - 1), q ** 2) == q ** -5 * (q - 1)


def test_vanishing_order():
    p = (q - E(8)) ** 2 * (q + 1) * q ** -4
    assert vanishing_order(p, RootOfUnity(8, 1)) == 2
    assert vanishing_order(p, RootOfUnity(8, 3)) == 0
    assert vanishing_order(p, RootOfUnity(2, 1)) == 1
    k, rest = divide_out_root(p, E(8))
    assert k == 2 and not evaluate(rest, E(8)).is_zero()
    with pytest.raises(ZeroPolynomialError):
        vanishing_order(LaurentPoly(), E(8))


def test_gcd_is_monic():
    a = 3 * (q - 1) ** 2 * (q + E(4))
    b = (q - 1) * (q + E(4)) * (q + 5)
    assert poly_gcd(a, b) == (q - 1) * (q + E(4))


def test_variables_do_not_mix():
    y = LaurentPoly.monomial(1, var="y")
    with pytest.raises(VariableMismatchError):
        lp_arith(q, y, "add")
    assert lp_arith(q, q, "mul") == q ** 2


def test_factored_round_trip():
    f = FactoredPoly("q", 2, -3, [(q - 1, 2), (q ** 2 + E(3), 1)])
    p = f.expand()
    assert p == 2 * q ** -3 * (q - 1) ** 2 * (q ** 2 + E(3))
    assert LaurentPoly.from_json(f.to_json()) == p
    assert FactoredPoly.from_json(f.to_json()).expand() == p


def test_json_forms():
    p = E(8) * q ** -2 + 3
    assert LaurentPoly.from_json(p.to_json()) == p
    assert LaurentPoly.from_json("5") == LaurentPoly.const(5)
    with pytest.raises(ValueError):
        LaurentPoly.from_json({"var": "x", "terms": {}})


@settings(max_examples=1000)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()


@settings(max_examples=1000)
@given(laurent_polys(), laurent_polys(), st.sampled_from([RootOfUnity(8, 1), RootOfUnity(12, 5), E(3)]))
def test_evaluation_is_homomorphism(a, b, x):
    assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)
    assert evaluate(a + b, x) == evaluate(a, x) + evaluate(b, x)


@settings(max_examples=1000)
@given(laurent_polys(), laurent_polys())
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert exact_div(a * b, b) == a
    if not a.is_zero():
        assert lp_valuation(a * b) == lp_valuation(a) + lp_valuation(b)


@settings(max_examples=500)
@given(laurent_polys(), st.integers(0, 3), st.sampled_from([RootOfUnity(8, 1), RootOfUnity(6, 1)]))
def test_vanishing_order_counts_factors(a, k, r):
    if a.is_zero():
        return
    base = vanishing_order(a, r)
    lin = q - r.value()
    assert vanishing_order(a * lin ** k, r) == base + k
