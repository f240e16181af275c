from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

import numpy as np

from src.errors import RealizabilityError
from src.lti.rational import RationalFunction
from src.qpoly import QuasiPolynomial, as_delay
from src.utils import format_delay


@dataclass(frozen=True, eq=False)
class DelaySum:
    """
    G(s) = sum_k G_k(s) e^{-h_k s} with rational G_k and exact delays, ascending and distinct.

    Rational parts must be proper unless ``allow_improper`` is set (sums built from quasi-polynomials).
    The empty sum is the zero function.
    """
    terms: Tuple[Tuple[RationalFunction, Fraction], ...] = ()
    allow_improper: bool = False

    def __post_init__(self):
        merged = {}
        for rational, delay in self.terms:
            delay = as_delay(delay)
            merged[delay] = merged[delay] + rational if delay in merged else rational
        terms = tuple((merged[delay], delay) for delay in sorted(merged) if not merged[delay].is_zero)
        if not self.allow_improper:
            for rational, delay in terms:
                if not rational.is_proper:
                    raise RealizabilityError(f"improper rational part {rational} at delay {delay}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_rational(cls, rational: RationalFunction, delay=0, allow_improper: bool = False) -> "DelaySum":
        return cls(((rational, as_delay(delay)),), allow_improper=allow_improper)

    @classmethod
    def from_quasi_polynomial(cls, q: QuasiPolynomial) -> "DelaySum":
        return cls(tuple((RationalFunction(term.coefficients), term.delay) for term in q.terms), allow_improper=True)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[RationalFunction, Union[Fraction, int, float, str]]],
                   allow_improper: bool = False) -> "DelaySum":
        return cls(tuple((rational, as_delay(delay)) for rational, delay in pairs), allow_improper=allow_improper)

    @property
    def delays(self) -> Tuple[Fraction, ...]:
        return tuple(delay for _, delay in self.terms)

    @property
    def rationals(self) -> Tuple[RationalFunction, ...]:
        return tuple(rational for rational, _ in self.terms)

    @property
    def max_delay(self) -> Fraction:
        return self.terms[-1][1] if self.terms else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_strictly_proper(self) -> bool:
        return all(rational.is_strictly_proper for rational in self.rationals)

    def evaluate(self, s):
        points = np.asarray(s, dtype=complex)
        total = np.zeros_like(points)
        for rational, delay in self.terms:
            total = total + rational.evaluate(points) * np.exp(-float(delay) * points)
        return total[()] if np.ndim(total) == 0 else total

    def __call__(self, s):
        return self.evaluate(s)

    def __neg__(self) -> "DelaySum":
        return DelaySum(tuple((-rational, delay) for rational, delay in self.terms), self.allow_improper)

    def __add__(self, other) -> "DelaySum":
        if isinstance(other, RationalFunction):
            other = DelaySum.from_rational(other, allow_improper=True)
        if not isinstance(other, DelaySum):
            return NotImplemented
        return DelaySum(self.terms + other.terms, self.allow_improper or other.allow_improper)

    __radd__ = __add__

    def __sub__(self, other) -> "DelaySum":
        if isinstance(other, RationalFunction):
            other = DelaySum.from_rational(other, allow_improper=True)
        if not isinstance(other, DelaySum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "DelaySum":
        if isinstance(other, (int, float)):
            other = RationalFunction.constant(other)
        if isinstance(other, RationalFunction):
            return DelaySum(tuple((rational * other, delay) for rational, delay in self.terms), allow_improper=True)
        if isinstance(other, QuasiPolynomial):
            other = DelaySum.from_quasi_polynomial(other)
        if isinstance(other, DelaySum):
            return DelaySum(tuple((a * b, h + k) for a, h in self.terms for b, k in other.terms), allow_improper=True)
        return NotImplemented

    __rmul__ = __mul__

    def delayed(self, delay) -> "DelaySum":
        """Multiplies by e^{-delay s}."""
        shift = as_delay(delay)
        return DelaySum(tuple((rational, h + shift) for rational, h in self.terms), self.allow_improper)

    def derivative(self) -> "DelaySum":
        """d/ds: sum_k (G_k' - h_k G_k) e^{-h_k s}."""
        return DelaySum(tuple((rational.derivative() - rational * float(delay), delay)
                              for rational, delay in self.terms), allow_improper=True)

    def common_denominator(self) -> np.ndarray:
        """Least common multiple of the denominators, up to exactly repeated factors."""
        denominator = np.ones(1)
        seen = []
        for rational in self.rationals:
            if rational.denominator not in seen:
                seen.append(rational.denominator)
                denominator = np.polymul(denominator, rational.denominator)
        return denominator

    def checked(self) -> "DelaySum":
        """Same sum with the properness check enforced."""
        return DelaySum(self.terms, allow_improper=False)

    def to_pretty(self, digits: int = 6) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for rational, delay in self.terms:
            body = rational.to_pretty(digits)
            if delay == 0:
                pieces.append(body)
            else:
                pieces.append(f"[{body}]e^{{-{format_delay(delay)}s}}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_pretty()


def eval_delaysum(g: DelaySum, s):
    return g.evaluate(s)
