from fractions import Fraction

import numpy as np
import pytest

from src.errors import QuasiPolynomialSyntaxError
from src.qpoly import (KindTag, QuasiPolynomial, as_delay, asymptotic_polynomial, classify, conjugate, derivative,
                       evaluate, evaluate_derivative, evaluate_terms, extract_common_delay, parse, serialize,
                       term_scale, to_pretty)


def test_parse_canonical_form(q1):
    assert q1.delays == (Fraction(0), Fraction(3, 2), Fraction(2))
    assert q1.degrees == (1, 1, 1)
    assert q1.terms[1].coefficients == (2.0, 7.0)


def test_parse_merges_equal_delays_and_sorts():
    q = parse("1 @ 1 ; 1 0 @ 0 ; 0 1 @ 1 ; 2 @ 1")
    assert q.delays == (Fraction(0), Fraction(1))
    assert q.terms[1].coefficients == (4.0,)


def test_parse_drops_vanishing_terms():
    q = parse("1 0 @ 0 ; 1 @ 0.5 ; -1 @ 1/2")
    assert q.is_polynomial
    assert q.terms[0].coefficients == (1.0, 0.0)


def test_parse_trims_leading_zeros():
    q = parse("0 0 1 2 @ 0")
    assert q.terms[0].coefficients == (1.0, 2.0)


def test_parse_multiline_value():
    q = parse("1 2 @ 0 ;\n 3 @ 0.4")
    assert q.delays == (Fraction(0), Fraction(2, 5))


@pytest.mark.parametrize("text", ["", "1 2", "1 @ 2 @ 3", "@ 1", "1 x @ 0", "1 @ -1", "1 @ abc", "1 @ 1/0",
                                  "0 0 @ 0", "0 @ 0 ; 0 @ 1", "inf @ 0"])
def test_parse_rejects_malformed(text):
    with pytest.raises(QuasiPolynomialSyntaxError):
        parse(text)


def test_decimal_delays_are_exact():
    assert as_delay("1.5") == Fraction(3, 2)
    assert as_delay(0.4) == Fraction(2, 5)
    assert as_delay("3/2") == Fraction(3, 2)
    assert as_delay(2) == Fraction(2)


def test_serialize_round_trip(q1, q2):
    for q in (q1, q2, parse("0.1 -0.2 0.3 @ 0 ; 1e-7 @ 7/3")):
        assert parse(serialize(q)) == q


def test_to_pretty(q1):
    assert to_pretty(q1) == "3s + 0.5 + (2s + 7)e^{-1.5s} + (s - 1)e^{-2s}"
    assert to_pretty(parse("1 0 0 1 @ 0 ; 1 @ 1.5")) == "s^3 + 1 + 1e^{-1.5s}"


def test_evaluate_matches_direct_formula(q1):
    s = np.array([1.0 + 0.0j, 0.3 - 2.0j, -1.0 + 4.0j])
    expected = (3 * s + 0.5) + (2 * s + 7) * np.exp(-1.5 * s) + (s - 1) * np.exp(-2 * s)
    np.testing.assert_allclose(evaluate(q1, s), expected, rtol=1e-12)
    assert q1(1.0) == pytest.approx(3.5 + 9 * np.exp(-1.5))


def test_evaluate_terms_and_scale(q1):
    values = evaluate_terms(q1, 1.0 + 1.0j)
    assert values.shape == (3,)
    assert term_scale(q1, 1.0 + 1.0j) == pytest.approx(np.max(np.abs(values)))


def test_derivative_agrees_with_central_difference(q1):
    s, step = 0.7 + 1.3j, 1e-6
    difference = (evaluate(q1, s + step) - evaluate(q1, s - step)) / (2 * step)
    assert evaluate_derivative(q1, s) == pytest.approx(difference, rel=1e-6)
    assert evaluate(derivative(q1), s) == pytest.approx(evaluate_derivative(q1, s), rel=1e-12)


def test_derivative_of_constant_vanishes():
    with pytest.raises(ValueError):
        derivative(parse("5 @ 0"))


def test_arithmetic_adds_delays_exactly(q2):
    square = q2 * q2
    assert square.delays == (Fraction(0), Fraction(2, 5), Fraction(4, 5))
    assert square.terms[0].coefficients == (1.0, 6.0, 9.0)
    assert square.terms[1].coefficients == (4.0, 8.0, -12.0)
    assert square.terms[2].coefficients == (4.0, -8.0, 4.0)
    assert q2 + q2 == q2 * 2.0
    assert q2.delayed("1/5").delays == (Fraction(1, 5), Fraction(3, 5))


def test_identically_zero_is_rejected():
    with pytest.raises(ValueError):
        QuasiPolynomial.from_polynomial([0.0, 0.0])


def test_classify(q1, q2):
    assert classify(q1) is KindTag.NEUTRAL
    assert classify(q2) is KindTag.NEUTRAL
    assert classify(parse("1 0 0 1 @ 0 ; 1 @ 1.5")) is KindTag.RETARDED
    assert classify(parse("1 -3 2 @ 0")) is KindTag.RETARDED


def test_conjugate_of_lower_degree_tail_is_advanced():
    q = parse("1 0 0 1 @ 0 ; 1 @ 1.5")
    assert classify(conjugate(q)) is KindTag.ADVANCED


def test_asymptotic_polynomial(q1):
    asymptotic = asymptotic_polynomial(q1)
    assert asymptotic.base == 2
    assert asymptotic.exponents == (0, 3, 4)
    np.testing.assert_allclose(asymptotic.coefficients, (1.0, 2 / 3, 1 / 3))
    np.testing.assert_allclose(asymptotic.as_array(), (1 / 3, 2 / 3, 0.0, 0.0, 1.0))


def test_conjugate(q2):
    conj = conjugate(q2)
    assert conj == parse("2 2 @ 0 ; 1 -3 @ 0.4")
    s = 0.4 + 0.9j
    assert evaluate(conj, s) == pytest.approx(-evaluate(q2, -s) * np.exp(-0.4 * s))


def test_conjugate_involution(q1, q2):
    assert conjugate(conjugate(q1)) == q1
    assert conjugate(conjugate(q2)) == q2


def test_conjugate_twice_drops_the_leading_delay():
    q = parse("1 -1 @ 1 ; 2 @ 2")
    _, shifted = extract_common_delay(q)
    assert conjugate(conjugate(q)) == shifted


def test_extract_common_delay():
    delay, shifted = extract_common_delay(parse("1 -1 @ 1 ; 1 @ 1.5"))
    assert delay == Fraction(1)
    assert shifted.delays == (Fraction(0), Fraction(1, 2))


def test_conjugate_magnitude_on_the_imaginary_axis(q1, q2):
    axis = 1j * np.linspace(0.0, 40.0, 401)
    for q in (q1, q2, parse("1 0 0 1 @ 0 ; 1 @ 1.5")):
        direct = np.abs(evaluate(q, axis))
        mirrored = np.abs(evaluate(conjugate(q), axis))
        assert np.all(np.abs(mirrored - direct) <= 1e-12 * term_scale(q, axis))
