import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

import numpy as np

from src.errors import QuasiPolynomialSyntaxError
from src.utils import format_delay, poly_derivative, poly_to_pretty, trim_leading_zeros

logger = logging.getLogger(__name__)

RationalDelay = Fraction

_DECIMAL_DELAY = re.compile(r"^\d+(\.\d*)?$|^\.\d+$")
_FRACTION_DELAY = re.compile(r"^\d+\s*/\s*\d+$")


def as_delay(value: Union[Fraction, int, float, str]) -> Fraction:
    """
    Converts a delay literal to an exact, reduced, non-negative fraction.

    Decimal literals are expanded exactly ("1.5" -> 3/2, 0.4 -> 2/5), never through binary floating point.

    Args:
        value: A Fraction, int, float or a "3/2" / "1.5" string.

    Returns:
        Fraction: The delay.
    """
    if isinstance(value, Fraction):
        delay = value
    elif isinstance(value, int):
        delay = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"delay must be finite, got {value!r}")
        delay = Fraction(repr(value))
    else:
        text = str(value).strip()
        if text.startswith("-"):
            raise QuasiPolynomialSyntaxError(f"negative delay {text!r}")
        if _FRACTION_DELAY.match(text):
            numerator, denominator = (int(part) for part in text.split("/"))
            if denominator == 0:
                raise QuasiPolynomialSyntaxError(f"zero denominator in delay {text!r}")
            delay = Fraction(numerator, denominator)
        elif _DECIMAL_DELAY.match(text):
            delay = Fraction(text)
        else:
            raise QuasiPolynomialSyntaxError(f"malformed delay {text!r}")
    if delay < 0:
        raise QuasiPolynomialSyntaxError(f"negative delay {delay}")
    return delay


class Term(NamedTuple):
    coefficients: Tuple[float, ...]
    delay: Fraction

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> float:
        return self.coefficients[0]


@dataclass(frozen=True)
class QuasiPolynomial:
    """
    q(s) = sum_i q_i(s) e^{-h_i s} with real polynomials q_i (highest degree first) and exact delays h_i,
    stored in canonical form: delays strictly ascending, no zero polynomial, nonzero leading coefficients.
    """
    terms: Tuple[Term, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a quasi-polynomial needs at least one term")
        previous = None
        for term in self.terms:
            if term.delay < 0:
                raise ValueError(f"negative delay {term.delay}")
            if previous is not None and term.delay <= previous:
                raise ValueError("delays must be strictly ascending")
            if term.coefficients[0] == 0:
                raise ValueError("leading coefficients must be nonzero")
            previous = term.delay

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Sequence[float], Union[Fraction, int, float, str]]]) -> "QuasiPolynomial":
        """
        Builds the canonical form: merges equal delays, trims leading zeros and drops zero polynomials.

        Raises:
            ValueError: When every polynomial vanishes.
        """
        merged = {}
        for coefficients, delay in pairs:
            delay = as_delay(delay)
            values = np.atleast_1d(np.asarray(coefficients, dtype=float))
            if not np.all(np.isfinite(values)):
                raise ValueError("coefficients must be finite")
            merged[delay] = np.polyadd(merged[delay], values) if delay in merged else values
        terms = []
        for delay in sorted(merged):
            values = trim_leading_zeros(merged[delay])
            if values[0] == 0:
                continue
            terms.append(Term(tuple(float(c) for c in values), delay))
        if not terms:
            raise ValueError("quasi-polynomial is identically zero")
        return cls(tuple(terms))

    @classmethod
    def from_polynomial(cls, coefficients: Sequence[float], delay=0) -> "QuasiPolynomial":
        return cls.from_terms([(coefficients, delay)])

    @property
    def delays(self) -> Tuple[Fraction, ...]:
        return tuple(term.delay for term in self.terms)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(term.degree for term in self.terms)

    @property
    def min_delay(self) -> Fraction:
        return self.terms[0].delay

    @property
    def max_delay(self) -> Fraction:
        return self.terms[-1].delay

    @property
    def is_polynomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0].delay == 0

    def __call__(self, s):
        return evaluate(self, s)

    def __neg__(self) -> "QuasiPolynomial":
        return QuasiPolynomial(tuple(Term(tuple(-c for c in term.coefficients), term.delay) for term in self.terms))

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return QuasiPolynomial.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "QuasiPolynomial":
        if isinstance(other, (int, float)):
            return QuasiPolynomial.from_terms((np.asarray(t.coefficients) * other, t.delay) for t in self.terms)
        return QuasiPolynomial.from_terms(
            (np.polymul(a.coefficients, b.coefficients), a.delay + b.delay)
            for a in self.terms for b in other.terms
        )

    __rmul__ = __mul__

    def delayed(self, delay) -> "QuasiPolynomial":
        """Multiplies by e^{-delay s}."""
        shift = as_delay(delay)
        return QuasiPolynomial(tuple(Term(term.coefficients, term.delay + shift) for term in self.terms))

    def __str__(self) -> str:
        return to_pretty(self)


def parse(text: str) -> QuasiPolynomial:
    """
    Parses the term grammar "c_n ... c_0 @ h ; ..." into a canonical quasi-polynomial.

    Args:
        text: e.g. "3 0.5 @ 0 ; 2 7 @ 3/2 ; 1 -1 @ 2".

    Returns:
        QuasiPolynomial: Normalized value (sorted delays, merged equal delays, zero polynomials dropped).

    Raises:
        QuasiPolynomialSyntaxError: On malformed terms, negative delays or an all-zero input.
    """
    chunks = [chunk.strip() for chunk in str(text).split(";")]
    if not any(chunks):
        raise QuasiPolynomialSyntaxError("empty quasi-polynomial")
    pairs = []
    for chunk in chunks:
        if not chunk:
            continue
        if chunk.count("@") != 1:
            raise QuasiPolynomialSyntaxError(f"term {chunk!r} must look like 'c_n ... c_0 @ h'")
        coefficient_text, delay_text = chunk.split("@")
        tokens = coefficient_text.replace(",", " ").split()
        if not tokens:
            raise QuasiPolynomialSyntaxError(f"term {chunk!r} has no coefficients")
        try:
            coefficients = [float(token) for token in tokens]
        except ValueError as error:
            raise QuasiPolynomialSyntaxError(f"bad coefficient in {chunk!r}") from error
        if not all(math.isfinite(c) for c in coefficients):
            raise QuasiPolynomialSyntaxError(f"non-finite coefficient in {chunk!r}")
        pairs.append((coefficients, as_delay(delay_text.strip())))
    try:
        return QuasiPolynomial.from_terms(pairs)
    except QuasiPolynomialSyntaxError:
        raise
    except ValueError as error:
        raise QuasiPolynomialSyntaxError(str(error)) from error


def serialize(q: QuasiPolynomial) -> str:
    """Canonical text form; parse(serialize(q)) == q."""
    return " ; ".join(
        " ".join(repr(c) for c in term.coefficients) + f" @ {term.delay}" for term in q.terms
    )


def to_pretty(q: QuasiPolynomial, digits: int = 6) -> str:
    pieces = []
    for term in q.terms:
        body = poly_to_pretty(term.coefficients, digits=digits)
        if term.delay == 0:
            pieces.append(body)
            continue
        if term.degree > 0 or term.leading < 0:
            body = f"({body})"
        pieces.append(f"{body}e^{{-{format_delay(term.delay)}s}}")
    return " + ".join(pieces)


def evaluate_terms(q: QuasiPolynomial, s) -> np.ndarray:
    """
    Per-term values q_i(s) e^{-h_i s}; the first axis indexes the terms.
    """
    points = np.asarray(s, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        values = np.stack([
            np.polyval(term.coefficients, points) * np.exp(-float(term.delay) * points) for term in q.terms
        ])
    return values


def evaluate(q: QuasiPolynomial, s):
    """
    Value of the sum at s (scalar or array). Horner per term, complex exponential per delay.

    Overflow is not an error: non-finite results are returned and reported in the log.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        value = evaluate_terms(q, s).sum(axis=0)
    if not np.all(np.isfinite(value)):
        logger.warning("non-finite value while evaluating %s", to_pretty(q))
    return value[()] if np.ndim(value) == 0 else value


def term_scale(q: QuasiPolynomial, s):
    """Largest term magnitude at s, the scale of residual checks."""
    return np.abs(evaluate_terms(q, s)).max(axis=0)


def evaluate_derivative(q: QuasiPolynomial, s):
    """q'(s) = sum_i (q_i'(s) - h_i q_i(s)) e^{-h_i s}."""
    points = np.asarray(s, dtype=complex)
    total = np.zeros_like(points)
    with np.errstate(over="ignore", invalid="ignore"):
        for term in q.terms:
            delay = float(term.delay)
            inner = np.polyval(poly_derivative(term.coefficients), points) - delay * np.polyval(term.coefficients, points)
            total = total + inner * np.exp(-delay * points)
    return total[()] if np.ndim(total) == 0 else total


def derivative(q: QuasiPolynomial) -> QuasiPolynomial:
    """
    Derivative as a quasi-polynomial.

    Raises:
        ValueError: When q is a constant (the derivative vanishes identically).
    """
    return QuasiPolynomial.from_terms(
        (np.polysub(poly_derivative(term.coefficients), float(term.delay) * np.asarray(term.coefficients)), term.delay)
        for term in q.terms
    )
