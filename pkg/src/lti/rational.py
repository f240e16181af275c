import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np

from src.errors import PoleEvaluationError
from src.rootfinder import RootSet, polynomial_roots
from src.tolerances import DEFAULT_TOLERANCES
from src.utils import poly_derivative, poly_from_roots, poly_to_pretty, trim_leading_zeros

logger = logging.getLogger(__name__)

Scalar = Union[int, float]


def _mirror_coefficients(coefficients: Sequence[float]) -> np.ndarray:
    values = np.asarray(coefficients, dtype=float)
    signs = (-1.0) ** np.arange(len(values) - 1, -1, -1)
    return values * signs


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """
    Ratio of real polynomials (highest degree first) in normal form: monic denominator, no leading zeros.

    Normalization happens on construction; common roots are only cancelled by ``reduced()``.
    """
    numerator: Tuple[float, ...]
    denominator: Tuple[float, ...] = (1.0,)

    def __post_init__(self):
        numerator = trim_leading_zeros(np.asarray(self.numerator, dtype=float))
        denominator = trim_leading_zeros(np.asarray(self.denominator, dtype=float))
        if denominator[0] == 0:
            raise ZeroDivisionError("denominator is identically zero")
        if not (np.all(np.isfinite(numerator)) and np.all(np.isfinite(denominator))):
            raise ValueError("coefficients must be finite")
        lead = denominator[0]
        if numerator[0] == 0:
            numerator, denominator, lead = np.zeros(1), np.ones(1), 1.0
        object.__setattr__(self, "numerator", tuple(float(c) for c in numerator / lead))
        object.__setattr__(self, "denominator", tuple(float(c) for c in denominator / lead))

    @classmethod
    def constant(cls, value: Scalar) -> "RationalFunction":
        return cls((float(value),))

    @classmethod
    def polynomial(cls, coefficients: Sequence[float]) -> "RationalFunction":
        return cls(tuple(coefficients))

    @classmethod
    def from_roots(cls, zeros: Sequence[complex], poles: Sequence[complex], gain: float = 1.0) -> "RationalFunction":
        return cls(tuple(gain * poly_from_roots(zeros)), tuple(poly_from_roots(poles)))

    @property
    def num(self) -> np.ndarray:
        return np.asarray(self.numerator)

    @property
    def den(self) -> np.ndarray:
        return np.asarray(self.denominator)

    @property
    def numerator_degree(self) -> int:
        return len(self.numerator) - 1

    @property
    def denominator_degree(self) -> int:
        return len(self.denominator) - 1

    @property
    def relative_degree(self) -> int:
        return self.denominator_degree - self.numerator_degree

    @property
    def is_zero(self) -> bool:
        return self.numerator == (0.0,)

    @property
    def is_proper(self) -> bool:
        return self.is_zero or self.relative_degree >= 0

    @property
    def is_strictly_proper(self) -> bool:
        return self.is_zero or self.relative_degree > 0

    @property
    def is_biproper(self) -> bool:
        return not self.is_zero and self.relative_degree == 0

    @property
    def high_frequency_gain(self) -> float:
        """Limit at infinity of a proper function."""
        if not self.is_proper:
            raise ValueError("improper function has no finite value at infinity")
        return self.numerator[0] if self.relative_degree == 0 and not self.is_zero else 0.0

    @cached_property
    def _poles(self) -> RootSet:
        if self.denominator_degree == 0:
            return RootSet()
        return polynomial_roots(self.denominator)

    def poles(self) -> RootSet:
        return self._poles

    def zeros(self) -> RootSet:
        if self.is_zero or self.numerator_degree == 0:
            return RootSet()
        return polynomial_roots(self.numerator)

    def evaluate(self, s, guard: float = DEFAULT_TOLERANCES.pole_guard):
        """
        Value at s (scalar or array).

        Raises:
            PoleEvaluationError: If s lies within ``guard`` (relative to max(1, |pole|)) of a pole.
        """
        points = np.asarray(s, dtype=complex)
        if guard and len(self._poles):
            flat = points.reshape(-1)
            for pole in self._poles.roots:
                if np.any(np.abs(flat - pole) <= guard * max(1.0, abs(pole))):
                    raise PoleEvaluationError(f"evaluation at the pole {pole:.6g} of {self.to_pretty()}")
        value = np.polyval(self.numerator, points) / np.polyval(self.denominator, points)
        return value[()] if np.ndim(value) == 0 else value

    def __call__(self, s):
        return self.evaluate(s)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return RationalFunction.constant(float(other))
        return NotImplemented

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(tuple(-c for c in self.numerator), self.denominator)

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunction(tuple(np.polyadd(self.num, other.num)), self.denominator)
        numerator = np.polyadd(np.polymul(self.num, other.den), np.polymul(other.num, self.den))
        return RationalFunction(tuple(numerator), tuple(np.polymul(self.den, other.den)))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(tuple(np.polymul(self.num, other.num)), tuple(np.polymul(self.den, other.den)))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("cannot invert the zero function")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def isclose(self, other: "RationalFunction", atol: float = 1e-9) -> bool:
        """Coefficient-wise comparison after cancelling common roots."""
        left, right = self.reduced(), other.reduced()
        if len(left.numerator) != len(right.numerator) or len(left.denominator) != len(right.denominator):
            return False
        return (np.allclose(left.numerator, right.numerator, atol=atol, rtol=0)
                and np.allclose(left.denominator, right.denominator, atol=atol, rtol=0))

    def reduced(self, tolerance: float = 1e-8) -> "RationalFunction":
        """
        Cancels numerator and denominator roots that agree within ``tolerance`` (relative to max(1, |root|)).
        """
        if self.is_zero:
            return self
        zeros = self.zeros().expanded()
        poles = self._poles.expanded()
        kept_zeros, kept_poles = [], list(poles)
        cancelled = 0
        for zero in zeros:
            match = next((index for index, pole in enumerate(kept_poles)
                          if abs(pole - zero) <= tolerance * max(1.0, abs(zero))), None)
            if match is None:
                kept_zeros.append(zero)
            else:
                kept_poles.pop(match)
                cancelled += 1
        if cancelled == 0:
            return self
        logger.debug("cancelled %d common roots in %s", cancelled, self.to_pretty())
        return RationalFunction.from_roots(kept_zeros, kept_poles, gain=self.numerator[0])

    def mirror(self) -> "RationalFunction":
        """F(-s)."""
        return RationalFunction(tuple(_mirror_coefficients(self.numerator)), tuple(_mirror_coefficients(self.denominator)))

    def derivative(self) -> "RationalFunction":
        numerator = np.polysub(np.polymul(poly_derivative(self.num), self.den), np.polymul(self.num, poly_derivative(self.den)))
        return RationalFunction(tuple(numerator), tuple(np.polymul(self.den, self.den)))

    def to_pretty(self, digits: int = 6) -> str:
        numerator = poly_to_pretty(self.numerator, digits=digits)
        if self.denominator == (1.0,):
            return numerator
        return f"({numerator})/({poly_to_pretty(self.denominator, digits=digits)})"

    def __str__(self) -> str:
        return self.to_pretty()

    def __repr__(self) -> str:
        return f"RationalFunction(numerator={self.numerator}, denominator={self.denominator})"


ZERO = RationalFunction((0.0,))
ONE = RationalFunction((1.0,))


def eval_rational(r: RationalFunction, s):
    return r.evaluate(s)
