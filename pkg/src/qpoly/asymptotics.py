import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple

import numpy as np

from src.qpoly.quasi_polynomial import QuasiPolynomial, Term


class KindTag(str, Enum):
    RETARDED = "Retarded"
    NEUTRAL = "Neutral"
    # First term not of maximal degree; only conjugates produce it
    ADVANCED = "Advanced"


def classify(q: QuasiPolynomial) -> KindTag:
    """
    Classifies a quasi-polynomial by comparing the degree of its first term with the others.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.

    Returns:
        KindTag: Neutral if a later term matches the first degree, Retarded if all later terms are of lower degree.
    """
    first, others = q.degrees[0], q.degrees[1:]
    if any(degree > first for degree in others):
        return KindTag.ADVANCED
    if any(degree == first for degree in others):
        return KindTag.NEUTRAL
    return KindTag.RETARDED


@dataclass(frozen=True)
class AsymptoticPolynomial:
    """
    p(z) = sum_i p_i z^{e_i} in the variable z = e^{-s/N}.
    """
    coefficients: Tuple[float, ...]
    exponents: Tuple[int, ...]
    base: int

    @property
    def degree(self) -> int:
        return max(self.exponents)

    def as_array(self) -> np.ndarray:
        """Dense coefficients, highest power first."""
        dense = np.zeros(self.degree + 1)
        for coefficient, exponent in zip(self.coefficients, self.exponents):
            dense[self.degree - exponent] += coefficient
        return dense

    def to_pretty(self, digits: int = 4) -> str:
        pieces = []
        for coefficient, exponent in sorted(zip(self.coefficients, self.exponents), key=lambda pair: -pair[1]):
            body = f"{coefficient:.{digits}g}"
            if exponent == 1:
                body += "z"
            elif exponent > 1:
                body += f"z^{exponent}"
            pieces.append(body)
        return " + ".join(pieces).replace("+ -", "- ")


def _lcd(delays) -> int:
    base = 1
    for delay in delays:
        base = base * delay.denominator // math.gcd(base, delay.denominator)
    return base


def asymptotic_polynomial(q: QuasiPolynomial) -> AsymptoticPolynomial:
    """
    Builds the asymptotic polynomial of q from the terms of top degree.

    The base N is the least common denominator of all delays and the exponents are N(h_i - h_1).
    For an Advanced value the first term of maximal degree takes the role of q_1.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.

    Returns:
        AsymptoticPolynomial: Normalized so that the exponent-0 coefficient is 1.
    """
    base = _lcd(q.delays)
    top = max(q.degrees)
    leaders = [term for term in q.terms if term.degree == top]
    reference = leaders[0]
    coefficients, exponents = [], []
    for term in leaders:
        offset = (term.delay - reference.delay) * base
        coefficients.append(term.leading / reference.leading)
        exponents.append(int(offset))
    return AsymptoticPolynomial(tuple(coefficients), tuple(exponents), base)


def conjugate(q: QuasiPolynomial) -> QuasiPolynomial:
    """
    Conjugate quasi-polynomial -q(-s)e^{-h_v s}.

    Term i becomes -q_i(-s) at delay h_v - h_i. Applying it twice returns q e^{h_1 s},
    which is q itself whenever the first delay is zero.
    """
    last = q.max_delay
    terms = []
    for term in reversed(q.terms):
        degree = term.degree
        flipped = tuple(
            float(-c * (-1) ** (degree - index)) + 0.0 for index, c in enumerate(term.coefficients)
        )
        terms.append(Term(flipped, last - term.delay))
    return QuasiPolynomial(tuple(terms))


def extract_common_delay(q: QuasiPolynomial) -> Tuple[Fraction, QuasiPolynomial]:
    """
    Splits off e^{-h_1 s}.

    Returns:
        tuple: (h_1, shifted) with e^{-h_1 s} * shifted(s) == q(s) and the first delay of shifted equal to 0.
    """
    first = q.min_delay
    shifted = QuasiPolynomial(tuple(Term(term.coefficients, term.delay - first) for term in q.terms))
    return first, shifted
