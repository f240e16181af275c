import math

import numpy as np
import pytest

from src.errors import NotFiniteError
from src.qpoly import conjugate, evaluate, parse, term_scale
from src.rootfinder import (Finiteness, Rectangle, RootSet, chain_abscissae, cluster_roots, count_roots,
                            finiteness_rhp, finiteness_rhp_conjugate, polynomial_roots, retarded_radius, rhp_roots,
                            right_bound, roots_in_region, search_rhp_roots, winding_number)


def _is_root(q, root, tolerance=1e-8):
    return abs(evaluate(q, root)) <= tolerance * float(term_scale(q, root))


def test_polynomial_roots_sorted_with_multiplicity():
    roots = polynomial_roots([1.0, -4.0, 5.0, -2.0])
    assert roots.total == 3
    np.testing.assert_allclose(roots.roots, [2.0, 1.0], atol=1e-6)
    assert roots.multiplicities == (1, 2)


def test_polynomial_roots_are_conjugate_paired():
    roots = polynomial_roots([1.0, 0.0, 1.0])
    np.testing.assert_allclose(roots.roots, [-1j, 1j], atol=1e-12)
    assert roots.is_conjugate_symmetric()


def test_polynomial_roots_of_constant():
    with pytest.raises(ValueError):
        polynomial_roots([3.0])


def test_root_set_helpers():
    roots = RootSet.from_pairs([(-1.0, 1), (0.5 + 1j, 2), (0.5 - 1j, 2)])
    assert roots.roots[0] == 0.5 - 1j
    assert roots.total == 5
    assert len(roots.expanded()) == 5
    assert roots.is_conjugate_symmetric()
    assert roots.in_open_right_half_plane().total == 4
    assert not RootSet.from_roots([1 + 1j]).is_conjugate_symmetric()


def test_cluster_roots():
    pairs = cluster_roots([1.0, 1.0 + 1e-9, 3.0])
    assert sorted(m for _, m in pairs) == [1, 2]


def test_rectangle_geometry():
    region = Rectangle(0.0, 4.0, -1.0, 1.0)
    left, right = region.split()
    assert left.re_max == pytest.approx(2.0) and right.re_min == pytest.approx(2.0)
    assert region.contains(3 + 0.5j) and not region.contains(5.0)
    with pytest.raises(ValueError):
        Rectangle(1.0, 0.0, 0.0, 1.0)


def test_winding_number_counts_enclosed_zeros():
    region = Rectangle(0.0, 1.0, -1.0, 1.0)
    assert winding_number(lambda s: (s - 0.5) * (s + 2.0), region) == 1
    assert winding_number(lambda s: (s - 0.5) ** 3, region) == 3
    assert winding_number(lambda s: s + 2.0, region) == 0


def test_finiteness_of_q1(q1):
    verdict = finiteness_rhp(q1)
    assert verdict.status is Finiteness.FINITE
    np.testing.assert_allclose(verdict.witness, [1.6796, 1.6796, 1.0312, 1.0312], atol=1e-3)


def test_finiteness_of_q2_and_its_conjugate(q2):
    verdict = finiteness_rhp(q2)
    assert verdict.status is Finiteness.INFINITE
    np.testing.assert_allclose(verdict.witness, [1 / math.sqrt(2)] * 2, atol=1e-9)
    assert finiteness_rhp_conjugate(q2).status is Finiteness.FINITE


def test_retarded_is_always_finite():
    q = parse("1 0 0 1 @ 0 ; 1 @ 1.5")
    assert finiteness_rhp(q).status is Finiteness.FINITE
    assert finiteness_rhp_conjugate(q).status is Finiteness.INFINITE


def test_unit_circle_is_indeterminate():
    q = parse("1 1 @ 0 ; 1 0 @ 1")
    assert finiteness_rhp(q).status is Finiteness.INDETERMINATE
    assert finiteness_rhp_conjugate(q).status is Finiteness.INDETERMINATE
    with pytest.raises(NotFiniteError):
        search_rhp_roots(q)


def test_count_roots_of_q1(q1):
    assert count_roots(q1, Rectangle(0.0, 10.0, -30.0, 30.0)) == 2


def test_search_rhp_roots_of_q1(q1):
    search = search_rhp_roots(q1)
    assert search.roots.total == 2
    assert search.heuristic
    assert search.roots.is_conjugate_symmetric()
    np.testing.assert_allclose(np.poly(search.roots.expanded()).real, [1.0, -0.8306, 2.7426], atol=1e-3)
    assert all(_is_root(q1, root) for root in search.roots.roots)


def test_conjugate_of_q2_has_one_real_root(q2):
    roots = rhp_roots(conjugate(q2))
    assert roots.total == 1
    assert roots.roots[0].real == pytest.approx(0.2470, abs=1e-3)
    assert roots.roots[0].imag == 0.0


def test_search_rhp_roots_refuses_infinite(q2):
    with pytest.raises(NotFiniteError) as raised:
        rhp_roots(q2)
    assert raised.value.verdict.status is Finiteness.INFINITE


def test_retarded_search_is_certified():
    q = parse("1 0 0 1 @ 0 ; 1 @ 1.5")
    search = search_rhp_roots(q)
    assert not search.heuristic
    assert search.roots.total == 2
    np.testing.assert_allclose(search.roots.roots, [0.6235 - 0.8514j, 0.6235 + 0.8514j], atol=1e-3)


def test_polynomial_search():
    search = search_rhp_roots(parse("1 -3 2 @ 0"))
    np.testing.assert_allclose(search.roots.roots, [2.0, 1.0], atol=1e-10)
    assert rhp_roots(parse("1 3 2 @ 0")).total == 0


def test_right_bound_dominates(q1):
    bound = right_bound(q1)
    first = q1.terms[0]
    tail = sum(np.abs(term.coefficients).sum() * math.exp(-float(term.delay) * bound) for term in q1.terms[1:])
    assert abs(first.leading) - (np.abs(first.coefficients).sum() - abs(first.leading)) / bound > tail


def test_retarded_radius():
    q = parse("1 0 0 1 @ 0 ; 1 @ 1.5")
    assert retarded_radius(q) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        retarded_radius(parse("1 3 @ 0 ; 2 -2 @ 0.4"))


def test_chain_abscissae(q1):
    np.testing.assert_allclose(chain_abscissae(q1), [-2 * math.log(1.0312), -2 * math.log(1.6796)], atol=1e-3)
    assert chain_abscissae(parse("1 0 0 1 @ 0 ; 1 @ 1.5")) == []


def test_roots_in_region_reaches_the_left_half_plane():
    roots = roots_in_region(parse("1 3 2 @ 0"), Rectangle(-2.5, -0.5, -1.0, 1.0))
    np.testing.assert_allclose(roots.roots, [-1.0, -2.0], atol=1e-8)


@pytest.mark.parametrize("text", ["3 0.5 @ 0 ; 2 7 @ 3/2 ; 1 -1 @ 2", "1 0 0 1 @ 0 ; 1 @ 1.5", "2 2 @ 0 ; 1 -3 @ 0.4",
                                  "1 -3 2 @ 0"])
def test_root_sets_agree_with_the_argument_principle(text):
    q = parse(text)
    search = search_rhp_roots(q)
    assert count_roots(q, search.region) == search.roots.total


def test_roots_in_region_agree_with_the_argument_principle(q1):
    for q, region in ((parse("1 3 2 @ 0"), Rectangle(-2.5, -0.5, -1.0, 1.0)),
                      (q1, Rectangle(0.0, 10.0, -30.0, 30.0))):
        assert roots_in_region(q, region).total == count_roots(q, region)
