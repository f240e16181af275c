import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from src.errors import ImaginaryAxisRootError, NotFiniteError
from src.lti import PureDelay, QuasiPolynomialRatio, RatioExpression, RationalFunction
from src.qpoly import QuasiPolynomial, conjugate, extract_common_delay
from src.rootfinder import RootSearch, RootSet, finiteness_rhp_conjugate, search_rhp_roots
from src.tolerances import DEFAULT_TOLERANCES, Tolerances
from src.utils import poly_from_roots

logger = logging.getLogger(__name__)

UNIT = QuasiPolynomial.from_polynomial([1.0])


@dataclass(frozen=True)
class InnerRational:
    """
    Blaschke product prod (s - z)/(s + conj(z)) over a conjugate-symmetric zero set in the open right half-plane.
    """
    zeros: RootSet

    @property
    def rational(self) -> RationalFunction:
        roots = self.zeros.expanded()
        return RationalFunction(tuple(poly_from_roots(roots)), tuple(poly_from_roots([-np.conj(z) for z in roots])))

    @property
    def numerator(self) -> Tuple[float, ...]:
        return self.rational.numerator

    @property
    def denominator(self) -> Tuple[float, ...]:
        return self.rational.denominator

    @property
    def degree(self) -> int:
        return self.zeros.total

    def evaluate(self, s):
        return self.rational.evaluate(s)

    def __call__(self, s):
        return self.evaluate(s)

    def to_pretty(self, digits: int = 6) -> str:
        return self.rational.to_pretty(digits)


def blaschke(roots: RootSet, tolerances: Tolerances = DEFAULT_TOLERANCES) -> InnerRational:
    """
    Builds the rational inner function whose zeros are the given right-half-plane roots.

    Args:
        roots (RootSet): Conjugate-symmetric roots in the open right half-plane.
        tolerances (Tolerances): ``axis_guard`` separates roots from the imaginary axis.

    Returns:
        InnerRational: Monic numerator prod (s - z_i), monic denominator prod (s + conj(z_i)).

    Raises:
        ImaginaryAxisRootError: If a root lies within the axis guard of the imaginary axis.
        ValueError: If a root lies in the left half-plane or the set is not conjugate-symmetric.
    """
    for root in roots.roots:
        if abs(root.real) <= tolerances.axis_guard:
            raise ImaginaryAxisRootError(f"root {root:.6g} lies on the imaginary axis")
        if root.real < 0:
            raise ValueError(f"root {root:.6g} is not in the right half-plane")
    if not roots.is_conjugate_symmetric():
        raise ValueError("Blaschke zeros must be closed under conjugation")
    return InnerRational(roots)


@dataclass(frozen=True)
class QuasiPolynomialFactors:
    """
    Inner/outer split of a quasi-polynomial together with the root search that produced it.

    ``conjugate_form`` marks the split through the conjugate quasi-polynomial.
    """
    q: QuasiPolynomial
    carrier: InnerRational
    search: RootSearch
    delay: Fraction = Fraction(0)
    shifted: QuasiPolynomial = None
    conjugate_form: bool = False

    @property
    def inner(self) -> RatioExpression:
        if self.conjugate_form:
            return RatioExpression.of(QuasiPolynomialRatio(self.q, conjugate(self.q)), self.carrier.rational)
        return RatioExpression.of(self.carrier.rational, PureDelay(self.delay))

    @property
    def outer(self) -> RatioExpression:
        if self.conjugate_form:
            return RatioExpression.of(QuasiPolynomialRatio(conjugate(self.q), UNIT), self.carrier.rational.inverse())
        return RatioExpression.of(QuasiPolynomialRatio(self.shifted, UNIT), self.carrier.rational.inverse())


def _checked_search(q: QuasiPolynomial, tolerances: Tolerances) -> RootSearch:
    search = search_rhp_roots(q, tolerances)
    for root in search.roots.roots:
        if abs(root.real) <= tolerances.axis_guard:
            raise ImaginaryAxisRootError(f"{q} has the root {root:.6g} on the imaginary axis")
    return search


def direct_factors(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> QuasiPolynomialFactors:
    delay, shifted = extract_common_delay(q)
    search = _checked_search(q, tolerances)
    return QuasiPolynomialFactors(q, blaschke(search.roots, tolerances), search, delay, shifted)


def conjugate_factors(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> QuasiPolynomialFactors:
    verdict = finiteness_rhp_conjugate(q, tolerances)
    if not verdict.is_finite:
        raise NotFiniteError(f"the conjugate of {q} does not have finitely many roots in C+ "
                             f"({verdict.status.value})", verdict)
    search = _checked_search(conjugate(q), tolerances)
    return QuasiPolynomialFactors(q, blaschke(search.roots, tolerances), search, conjugate_form=True)


def factor_qpoly_direct(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES
                        ) -> Tuple[RatioExpression, RatioExpression]:
    """
    q = inner * outer with inner = blaschke(C+ roots of q) * e^{-h_1 s} and outer = q / inner.

    Raises:
        NotFiniteError: If q has infinitely many C+ roots (or the verdict is indeterminate).
    """
    factors = direct_factors(q, tolerances)
    return factors.inner, factors.outer


def factor_qpoly_conjugate(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES
                           ) -> Tuple[RatioExpression, RatioExpression]:
    """
    q = inner * outer with inner = (q / conj q) * blaschke(C+ roots of conj q) and outer = conj q / blaschke(...).

    Raises:
        NotFiniteError: If the conjugate has infinitely many C+ roots.
    """
    factors = conjugate_factors(q, tolerances)
    return factors.inner, factors.outer
