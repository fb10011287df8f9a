import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from simprep import (EpsPolynomial, ThomEncoding, UPoly, ZeroPolynomial, ZeroPolynomialInInput, compare,
                     isolate_roots, parse_upoly, remove_infinitesimals, resultant, sign_at, sturm_count,
                     thom_encode, value_at)
from simprep.realroots import root_multiplicities

T = UPoly.T
coeffs = st.lists(st.integers(-10, 10), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


def sympy_roots(c):
    x = sympy.Symbol("x")
    return sorted(sympy.Poly(list(reversed(c)), x).real_roots())


# -- polynomials --------------------------------------------------------------

def test_upoly_arithmetic_and_text():
    f = parse_upoly("T^3 - T")
    assert f == T * T * T - T
    assert f.derivative() == parse_upoly("3*T^2 - 1")
    assert f(2) == 6
    assert f.to_text() == "T^3 - T"
    assert [d.degree for d in f.derivatives()] == [3, 2, 1, 0]


def test_squarefree_part():
    f = (T - 1) * (T - 1) * (T + 2)
    assert f.squarefree().monic() == ((T - 1) * (T + 2)).monic()


def test_primitive_of_negative_constant():
    assert UPoly([-3]).primitive() == UPoly([1])
    assert UPoly([-1]).sign_at(0) == -1


@settings(max_examples=200, deadline=None)
@given(coeffs, st.fractions(max_denominator=50))
def test_sign_at_matches_exact_evaluation(c, x):
    f = UPoly(c)
    v = f(x)
    assert f.sign_at(x) == (v > 0) - (v < 0)


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs)
def test_gcd_matches_sympy(c1, c2):
    x = sympy.Symbol("x")
    from simprep.upoly import poly_gcd

    g = poly_gcd(UPoly(c1), UPoly(c2))
    ref = sympy.Poly(list(reversed(c1)), x).gcd(sympy.Poly(list(reversed(c2)), x)).monic()
    assert [sympy.Rational(c.numerator, c.denominator) for c in reversed(g.coeffs)] == ref.all_coeffs()


# -- isolation --------------------------------------------------------------------

def test_isolate_sqrt2():
    ivs = isolate_roots(T * T - 2)
    assert len(ivs) == 2
    (a, b), (c, d) = ivs
    assert a <= -math.sqrt(2) <= b and c <= math.sqrt(2) <= d and b <= c


def test_isolate_no_real_roots():
    assert isolate_roots(T * T + 1) == []


def test_double_root_multiplicity():
    [(iv, mult)] = root_multiplicities((T - 1) * (T - 1))
    assert iv[0] <= 1 <= iv[1] and mult == 2


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        isolate_roots(UPoly())


@settings(max_examples=150, deadline=None)
@given(coeffs)
def test_isolation_matches_sympy(c):
    f = UPoly(c)
    ivs = isolate_roots(f)
    roots = sympy_roots(c)
    distinct = sorted(set(roots))
    assert len(ivs) == len(distinct) == sturm_count(f)
    for (lo, hi), r in zip(ivs, distinct):
        assert lo <= r <= hi


# -- Thom encodings -----------------------------------------------------------

def test_thom_cubic():
    f = T**3 - T
    enc = thom_encode(f)
    assert [e.sigma for e in enc] == [(0, 1, -1, 1), (0, -1, 0, 1), (0, 1, 1, 1)]


def test_thom_double_root():
    [e] = thom_encode((T - 2) * (T - 2))
    assert e.sigma == (0, 0, 1)
    assert e == 2


def test_thom_no_roots():
    assert thom_encode(T * T + 1) == []


def test_encoding_from_signs_and_json_round_trip():
    f = T**3 - T
    e = ThomEncoding(f, (0, -1, 0, 1))
    assert e == 0
    again = ThomEncoding.from_json(e.to_json())
    assert again.f == f and again.sigma == e.sigma


def test_bad_sign_vector():
    with pytest.raises(ValueError):
        ThomEncoding(T * T - 2, (0, 0, 1))


def test_sign_at_examples():
    sqrt2 = thom_encode(T * T - 2)[1]
    assert sign_at(T * T - 2, sqrt2) == 0
    assert sign_at(T, sqrt2) == 1
    assert sign_at(T * T - 3, sqrt2) == -1


def test_compare_examples():
    sqrt2 = thom_encode(T * T - 2)[1]
    one = thom_encode(T - 1)[0]
    assert compare(sqrt2, one) == 1
    assert compare(one, sqrt2) == -1
    assert compare(sqrt2, sqrt2) == 0
    a, b, c = thom_encode(T**3 - T)
    assert compare(a, b) == -1 and compare(b, c) == -1


def test_equal_roots_of_different_polynomials():
    x = thom_encode(T * T - 2)[1]
    y = thom_encode(T**4 - 4)[1]
    assert compare(x, y) == 0 and x == y


def test_rational_roots_get_exact_intervals():
    encs = thom_encode((3 * T - 1) * (T * T - 3))
    mid = encs[1]
    assert mid.is_rational and mid == Fraction(1, 3)
    assert not encs[0].is_rational


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs)
def test_compare_agrees_with_floats(c1, c2):
    xs = thom_encode(UPoly(c1)) + thom_encode(UPoly(c2))
    for a in xs:
        for b in xs:
            fa, fb = float(a), float(b)
            if abs(fa - fb) > 1e-6:
                assert compare(a, b) == (1 if fa > fb else -1)


# -- resultants and values -----------------------------------------------------

def _in_x(*cs):
    # coefficient list (in X) of polynomials in Y
    return [UPoly(c) if isinstance(c, list) else UPoly([c]) for c in cs]


def test_resultant_linear():
    # Res_X(X - 3, X - 5) = 3 - 5 up to sign
    r = resultant(_in_x(-3, 1), _in_x(-5, 1))
    assert abs(r(0)) == 2


def test_resultant_square():
    # Res_X(X^2 - 2, Y - X^2) is (Y - 2)^2 up to a constant
    r = resultant(_in_x(-2, 0, 1), _in_x([0, 1], 0, -1))
    Y = UPoly.T
    assert r.monic() == ((Y - 2) * (Y - 2)).monic()


def test_resultant_roots_pm_sqrt2():
    r = resultant(_in_x(-2, 0, 1), _in_x([0, 1], -1))
    assert [round(float(e), 9) for e in thom_encode(r)] == [round(-math.sqrt(2), 9), round(math.sqrt(2), 9)]


def test_value_at():
    sqrt2 = thom_encode(T * T - 2)[1]
    v = value_at(T**3, sqrt2)  # 2 sqrt 2
    assert abs(float(v) - 2 * math.sqrt(2)) < 1e-9
    assert value_at(T * T, sqrt2) == 2
    assert value_at(T * T, sqrt2).is_rational


# -- infinitesimals ----------------------------------------------------------------

def test_remove_t_minus_eps():
    G = EpsPolynomial({(0,): T, (1,): UPoly([-1])})
    [e] = remove_infinitesimals([G])
    assert e == 0


def test_remove_constant_only():
    assert remove_infinitesimals([EpsPolynomial(UPoly([1]))]) == []


def test_remove_eps_t_minus_one_and_sqrt2():
    G1 = EpsPolynomial({(1,): T, (0,): UPoly([-1])})
    G2 = EpsPolynomial(T * T - 2)
    out = remove_infinitesimals([G1, G2])
    assert [round(float(e), 9) for e in out] == [round(-math.sqrt(2), 9), 0.0, round(math.sqrt(2), 9)]


def test_zero_input_rejected():
    with pytest.raises(ZeroPolynomialInInput):
        remove_infinitesimals([EpsPolynomial({})])


@settings(max_examples=50, deadline=None)
@given(st.lists(coeffs, min_size=1, max_size=3))
def test_eps_free_input_equals_product(cs):
    polys = [UPoly(c) for c in cs]
    prod = UPoly([1])
    for p in polys:
        prod = prod * p
    out = remove_infinitesimals([EpsPolynomial(p) for p in polys])
    ref = thom_encode(prod)
    assert len(out) == len(ref) and all(a == b for a, b in zip(out, ref))
