from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from src.errors import PoleEvaluationError
from src.lti.rational import RationalFunction
from src.qpoly import QuasiPolynomial, as_delay, evaluate, term_scale, to_pretty
from src.utils import format_delay


@dataclass(frozen=True)
class QuasiPolynomialRatio:
    numerator: QuasiPolynomial
    denominator: QuasiPolynomial

    def evaluate(self, s, guard: float = 1e-12):
        points = np.asarray(s, dtype=complex)
        below = evaluate(self.denominator, points)
        if guard and np.any(np.abs(below) <= guard * term_scale(self.denominator, points)):
            raise PoleEvaluationError(f"evaluation at a root of {self.denominator}")
        return evaluate(self.numerator, points) / below

    def __call__(self, s):
        return self.evaluate(s)

    def to_pretty(self, digits: int = 6) -> str:
        return f"[{to_pretty(self.numerator, digits)}]/[{to_pretty(self.denominator, digits)}]"


@dataclass(frozen=True)
class PureDelay:
    """e^{-delay s}."""
    delay: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delay", as_delay(self.delay))

    def evaluate(self, s):
        return np.exp(-float(self.delay) * np.asarray(s, dtype=complex))

    def __call__(self, s):
        return self.evaluate(s)

    def to_pretty(self, digits: int = 6) -> str:
        return f"e^{{-{format_delay(self.delay)}s}}"


Factor = Union[RationalFunction, QuasiPolynomialRatio, PureDelay]


@dataclass(frozen=True)
class RatioExpression:
    """
    Ordered product of rational functions, quasi-polynomial ratios and pure delays, kept unexpanded.
    """
    factors: Tuple[Factor, ...] = ()

    def __post_init__(self):
        factors = tuple(self.factors)
        for factor in factors:
            if isinstance(factor, RationalFunction) and factor.is_zero:
                raise ValueError("a ratio expression cannot hold an identically-zero factor")
        # e^{0s} factors are dropped
        factors = tuple(f for f in factors if not (isinstance(f, PureDelay) and f.delay == 0))
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *factors: Factor) -> "RatioExpression":
        return cls(tuple(factors))

    def evaluate(self, s):
        points = np.asarray(s, dtype=complex)
        value = np.ones_like(points)
        for factor in self.factors:
            value = value * factor.evaluate(points)
        return value[()] if np.ndim(value) == 0 else value

    def __call__(self, s):
        return self.evaluate(s)

    def __mul__(self, other) -> "RatioExpression":
        if isinstance(other, RatioExpression):
            return RatioExpression(self.factors + other.factors)
        if isinstance(other, (RationalFunction, QuasiPolynomialRatio, PureDelay)):
            return RatioExpression(self.factors + (other,))
        return NotImplemented

    @property
    def delay(self) -> Fraction:
        return sum((f.delay for f in self.factors if isinstance(f, PureDelay)), Fraction(0))

    @property
    def rational_part(self) -> RationalFunction:
        """Product of the rational factors."""
        product = RationalFunction.constant(1.0)
        for factor in self.factors:
            if isinstance(factor, RationalFunction):
                product = product * factor
        return product

    @property
    def quasi_polynomial_ratios(self) -> Tuple[QuasiPolynomialRatio, ...]:
        return tuple(f for f in self.factors if isinstance(f, QuasiPolynomialRatio))

    def to_pretty(self, digits: int = 6) -> str:
        if not self.factors:
            return "1"
        return " * ".join(factor.to_pretty(digits) for factor in self.factors)

    def __str__(self) -> str:
        return self.to_pretty()


def eval_expr(x: RatioExpression, s):
    return x.evaluate(s)
