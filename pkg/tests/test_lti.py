from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from src.errors import PartialFractionError, PoleEvaluationError, RealizabilityError
from src.lti import (ONE, DelaySum, PureDelay, QuasiPolynomialRatio, RatioExpression, RationalFunction, eval_delaysum,
                     eval_expr, eval_rational, export_csv, frequency_response, impulse_response,
                     impulse_response_frame, partial_fraction_split, pole_order, residue_table)
from src.qpoly import parse

POINTS = np.array([0.3 + 0.7j, -0.4 + 2.0j, 1.5 - 0.2j, 2.0 + 3.0j])


def test_normal_form_has_monic_denominator():
    r = RationalFunction((2.0, 4.0), (2.0, 2.0))
    assert r.numerator == (1.0, 2.0)
    assert r.denominator == (1.0, 1.0)
    assert RationalFunction((0.0, 0.0), (3.0, 1.0)).is_zero


def test_zero_denominator_is_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunction((1.0,), (0.0,))


def test_arithmetic():
    a = RationalFunction((1.0,), (1.0, 1.0))
    b = RationalFunction((1.0,), (1.0, 2.0))
    total = a + b
    assert total.numerator == (2.0, 3.0)
    assert total.denominator == (1.0, 3.0, 2.0)
    np.testing.assert_allclose((a * b - a / b.inverse()).evaluate(POINTS), 0.0, atol=1e-14)
    np.testing.assert_allclose((2 - a).evaluate(POINTS), 2 - a.evaluate(POINTS))
    np.testing.assert_allclose((1 / a).evaluate(POINTS), POINTS + 1)


def test_properness():
    assert RationalFunction((1.0,), (1.0, 1.0)).is_strictly_proper
    assert RationalFunction((1.0, -1.0), (1.0, 1.0)).is_biproper
    assert not RationalFunction((1.0, 0.0, 0.0), (1.0, 1.0)).is_proper
    assert RationalFunction((3.0, 1.0), (1.0, 1.0)).high_frequency_gain == 3.0


def test_poles_and_zeros():
    r = RationalFunction((1.0, -1.0), (1.0, 3.0, 2.0))
    np.testing.assert_allclose(r.zeros().roots, [1.0])
    np.testing.assert_allclose(r.poles().roots, [-1.0, -2.0])


def test_evaluation_at_a_pole_is_refused():
    with pytest.raises(PoleEvaluationError):
        RationalFunction((1.0,), (1.0, 1.0)).evaluate(-1.0)


def test_reduced_cancels_common_roots():
    r = RationalFunction.from_roots([1.0, -2.0], [1.0, -3.0])
    reduced = r.reduced()
    assert reduced.isclose(RationalFunction((1.0, 2.0), (1.0, 3.0)))
    assert reduced.denominator_degree == 1


def test_mirror():
    r = RationalFunction((1.0, -1.0), (1.0, 2.0))
    np.testing.assert_allclose(r.mirror().evaluate(POINTS), r.evaluate(-POINTS))


def test_delay_sum_merges_and_orders():
    a = RationalFunction((1.0,), (1.0, 1.0))
    g = DelaySum.from_pairs([(a, "1"), (a, 0), (a, 1.0)])
    assert g.delays == (Fraction(0), Fraction(1))
    assert g.terms[1][0].isclose(a * 2.0)
    assert DelaySum.from_pairs([(a, 0), (-a, 0)]).is_zero


def test_delay_sum_rejects_improper_parts():
    with pytest.raises(RealizabilityError):
        DelaySum.from_rational(RationalFunction((1.0, 0.0), (1.0,)))
    assert DelaySum.from_quasi_polynomial(parse("1 2 @ 0 ; 1 @ 1")).allow_improper


def test_delay_sum_evaluate_and_derivative():
    a = RationalFunction((1.0,), (1.0, 1.0))
    g = DelaySum.from_pairs([(a, 0), (a * 3.0, "1/2")])
    expected = 1 / (POINTS + 1) + 3 * np.exp(-0.5 * POINTS) / (POINTS + 1)
    np.testing.assert_allclose(g.evaluate(POINTS), expected)
    step = 1e-6
    difference = (g.evaluate(POINTS + step) - g.evaluate(POINTS - step)) / (2 * step)
    np.testing.assert_allclose(g.derivative().evaluate(POINTS), difference, rtol=1e-6)
    np.testing.assert_allclose(g.delayed(1).evaluate(POINTS), np.exp(-POINTS) * expected)


def test_delay_sum_times_quasi_polynomial():
    q = parse("1 3 @ 0 ; 2 -2 @ 0.4")
    r = RationalFunction((1.0,), (1.0, 5.0))
    product = DelaySum.from_quasi_polynomial(q) * r
    np.testing.assert_allclose(product.evaluate(POINTS), q(POINTS) * r.evaluate(POINTS))


def test_residue_table_simple_poles():
    table = residue_table(RationalFunction((1.0,), (1.0, 3.0, 2.0)))
    assert table.residue(-1.0) == pytest.approx(1.0)
    assert table.residue(-2.0) == pytest.approx(-1.0)
    assert table.orders == (1, 1)


def test_residue_table_double_pole():
    # (s + 2)/(s + 1)^2 = 1/(s + 1) + 1/(s + 1)^2
    table = residue_table(RationalFunction((1.0, 2.0), (1.0, 2.0, 1.0)))
    (pole, coefficients), = list(table)
    assert pole == pytest.approx(-1.0)
    np.testing.assert_allclose(coefficients, [1.0, 1.0], atol=1e-6)


def test_residue_table_complex_pair_is_symmetric():
    table = residue_table(RationalFunction((1.0, 0.0), (1.0, 2.0, 5.0)))
    assert table.is_conjugate_symmetric()
    assert len(table.to_frame()) == 2


def test_pole_order():
    order, remaining = pole_order([1.0, -3.0, 3.0, -1.0], 1.0)
    assert order == 3
    assert len(remaining) == 1


def test_partial_fraction_split():
    r = RationalFunction((1.0, 3.0), (1.0, 1.0, -2.0))
    h, f = partial_fraction_split(r, [1.0])
    assert f.isclose(RationalFunction((4 / 3,), (1.0, -1.0)))
    assert h.isclose(RationalFunction((-1 / 3,), (1.0, 2.0)))
    np.testing.assert_allclose(h.evaluate(POINTS) + f.evaluate(POINTS), r.evaluate(POINTS), rtol=1e-12)


def test_partial_fraction_split_keeps_polynomial_part_in_h():
    r = RationalFunction((1.0, 0.0, 0.0, 5.0), (1.0, -1.0))
    h, f = partial_fraction_split(r, [1.0])
    assert f.isclose(RationalFunction((6.0,), (1.0, -1.0)))
    np.testing.assert_allclose(h.evaluate(POINTS) + f.evaluate(POINTS), r.evaluate(POINTS), rtol=1e-12)


def test_partial_fraction_split_rejects_bad_pole_sets():
    r = RationalFunction((1.0,), (1.0, -2.0, 5.0))
    with pytest.raises(PartialFractionError):
        partial_fraction_split(r, [3.0])
    with pytest.raises(PartialFractionError):
        partial_fraction_split(r, [1.0 + 2.0j])
    h, f = partial_fraction_split(r, [1.0 + 2.0j, 1.0 - 2.0j])
    assert h.is_zero
    np.testing.assert_allclose(f.evaluate(POINTS), r.evaluate(POINTS), rtol=1e-12)


def test_impulse_response_of_first_order_lag():
    t = np.linspace(0.0, 5.0, 51)
    np.testing.assert_allclose(impulse_response(RationalFunction((1.0,), (1.0, 1.0)), t), np.exp(-t), atol=1e-14)


def test_impulse_response_of_delayed_double_pole():
    t = np.linspace(0.0, 6.0, 61)
    g = DelaySum.from_rational(RationalFunction((1.0,), (1.0, 2.0, 1.0)), 1)
    tau = np.maximum(t - 1.0, 0.0)
    expected = np.where(t >= 1.0, tau * np.exp(-tau), 0.0)
    np.testing.assert_allclose(impulse_response(g, t), expected, atol=1e-8)


def test_impulse_response_step_is_right_continuous():
    g = DelaySum.from_rational(RationalFunction((1.0,), (1.0, 1.0)), 1)
    assert impulse_response(g, [0.999, 1.0])[0] == 0.0
    assert impulse_response(g, [1.0])[0] == pytest.approx(1.0)


def test_impulse_response_of_biproper_term_is_distributional():
    with pytest.raises(RealizabilityError):
        impulse_response(RationalFunction((1.0, 0.0), (1.0, 1.0)), [0.0, 1.0])


def test_impulse_response_frame_and_csv(tmp_path):
    frame = impulse_response_frame(RationalFunction((1.0,), (1.0, 1.0)), np.linspace(0.0, 1.0, 5))
    assert list(frame.columns) == ["t", "f"]
    path = export_csv(frame, tmp_path / "impulse.csv")
    assert path.read_text().splitlines()[0] == "t,f"
    reread = pd.read_csv(path)
    np.testing.assert_allclose(reread["f"].to_numpy(), frame["f"].to_numpy(), rtol=1e-14)


def test_frequency_response():
    frame = frequency_response(RationalFunction((1.0,), (1.0, 1.0)), [1.0])
    assert list(frame.columns) == ["omega", "re", "im"]
    assert frame["re"].iloc[0] == pytest.approx(0.5)
    assert frame["im"].iloc[0] == pytest.approx(-0.5)


def test_ratio_expression():
    q = parse("1 3 @ 0 ; 2 -2 @ 0.4")
    r = RationalFunction((1.0, -1.0), (1.0, 1.0))
    expression = RatioExpression.of(r, PureDelay(Fraction(1, 2)), QuasiPolynomialRatio(q, q))
    np.testing.assert_allclose(expression.evaluate(POINTS), r.evaluate(POINTS) * np.exp(-0.5 * POINTS))
    assert expression.delay == Fraction(1, 2)
    assert expression.rational_part == r
    assert len((expression * ONE).factors) == 4
    assert RatioExpression.of(PureDelay(0)).factors == ()


def test_point_evaluators_agree_with_methods():
    r = RationalFunction((1.0, -1.0), (1.0, 1.0))
    g = DelaySum.from_pairs([(r, 0), (r * 2.0, Fraction(1, 2))])
    expression = RatioExpression.of(r, PureDelay(1))
    s = 0.3 + 0.7j
    assert eval_rational(r, s) == pytest.approx(r.evaluate(s))
    assert eval_delaysum(g, s) == pytest.approx(r.evaluate(s) * (1 + 2 * np.exp(-0.5 * s)))
    assert eval_expr(expression, s) == pytest.approx(r.evaluate(s) * np.exp(-s))


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.5, -0.7), (-3.0, 0.0)])
def test_impulse_response_is_linear(a, b):
    g1 = DelaySum.from_pairs([(RationalFunction((1.0,), (1.0, 1.0)), 0),
                              (RationalFunction((2.0, 1.0), (1.0, 2.0, 5.0)), Fraction(1, 2))])
    g2 = DelaySum.from_pairs([(RationalFunction((1.0,), (1.0, -1.0)), Fraction(1, 2)),
                              (RationalFunction((1.0,), (1.0, 4.0, 4.0)), 1)])
    grid = np.linspace(0.0, 3.0, 301)
    f1, f2 = impulse_response(g1, grid), impulse_response(g2, grid)
    combined = impulse_response(g1 * a + g2 * b, grid)
    scale = np.abs(a * f1) + np.abs(b * f2) + 1.0
    assert np.all(np.abs(combined - (a * f1 + b * f2)) <= 1e-12 * scale)


def test_partial_fraction_split_takes_the_full_multiplicity():
    r = RationalFunction((1.0,), tuple(np.poly([1.0, 1.0, -2.0])))
    with pytest.raises(PartialFractionError):
        partial_fraction_split(r, [(1.0, 1)])
    h, f = partial_fraction_split(r, [1.0])
    assert f.denominator_degree == 2
    assert f.isclose(partial_fraction_split(r, [(1.0, 2)])[1])
    np.testing.assert_allclose(h.evaluate(POINTS) + f.evaluate(POINTS), r.evaluate(POINTS), rtol=1e-12)
