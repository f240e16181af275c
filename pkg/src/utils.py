from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np


def trim_leading_zeros(coefficients: Sequence[complex], atol: float = 0.0) -> np.ndarray:
    """
    Drops leading (highest-degree) coefficients whose magnitude is at most ``atol``.

    Args:
        coefficients: Polynomial coefficients, highest degree first.
        atol: Absolute threshold; 0 keeps every nonzero coefficient.

    Returns:
        np.ndarray: The trimmed coefficients, at least one entry long ([0.] for the zero polynomial).
    """
    values = np.atleast_1d(np.asarray(coefficients))
    nonzero = np.flatnonzero(np.abs(values) > atol)
    if nonzero.size == 0:
        return np.zeros(1, dtype=values.dtype if values.size else float)
    return values[nonzero[0]:]


def poly_derivative(coefficients: Sequence[complex]) -> np.ndarray:
    values = np.atleast_1d(np.asarray(coefficients))
    degree = len(values) - 1
    if degree == 0:
        return np.zeros(1, dtype=values.dtype)
    return values[:-1] * np.arange(degree, 0, -1)


def poly_scale(coefficients: Sequence[complex], s) -> np.ndarray:
    """Term-wise magnitude sum sum_k |c_k||s|^k, the natural scale for residual checks."""
    values = np.abs(np.atleast_1d(np.asarray(coefficients)))
    return np.polyval(values, np.abs(s))


def synthetic_division(coefficients: Sequence[complex], root: complex) -> Tuple[np.ndarray, complex]:
    """
    Divides a polynomial by (s - root) with Horner's scheme.

    Returns:
        tuple: (quotient coefficients, remainder) where the remainder equals p(root).
    """
    values = np.atleast_1d(np.asarray(coefficients, dtype=complex))
    partial = np.empty_like(values)
    accumulator = 0j
    for index, coefficient in enumerate(values):
        accumulator = accumulator * root + coefficient
        partial[index] = accumulator
    if len(values) == 1:
        return np.zeros(1, dtype=complex), partial[-1]
    return partial[:-1], partial[-1]


def taylor_coefficients(coefficients: Sequence[complex], center: complex, count: int) -> np.ndarray:
    """
    First ``count`` Taylor coefficients of a polynomial around ``center`` by repeated synthetic division,
    i.e. p(s) = sum_j t_j (s - center)^j; entry j of the result is t_j.
    """
    remaining = np.atleast_1d(np.asarray(coefficients, dtype=complex))
    taylor = np.zeros(count, dtype=complex)
    for index in range(count):
        if len(remaining) == 0:
            break
        quotient, remainder = synthetic_division(remaining, center)
        taylor[index] = remainder
        remaining = quotient if len(remaining) > 1 else np.zeros(0, dtype=complex)
    return taylor


def series_divide(numerator: np.ndarray, denominator: np.ndarray, count: int) -> np.ndarray:
    """Power-series quotient numerator / denominator truncated to ``count`` terms (denominator[0] != 0)."""
    quotient = np.zeros(count, dtype=complex)
    for index in range(count):
        accumulated = numerator[index] if index < len(numerator) else 0j
        for inner in range(1, min(index, len(denominator) - 1) + 1):
            accumulated -= denominator[inner] * quotient[index - inner]
        quotient[index] = accumulated / denominator[0]
    return quotient


def poly_from_roots(roots: Sequence[complex], real: bool = True) -> np.ndarray:
    """Monic polynomial with the given roots; imaginary round-off dropped when ``real``."""
    if len(roots) == 0:
        return np.ones(1)
    coefficients = np.poly(np.asarray(roots, dtype=complex))
    return coefficients.real.copy() if real else coefficients


def format_number(value: float, digits: int = 6) -> str:
    return f"{value:.{digits}g}"


def format_delay(delay: Fraction) -> str:
    return f"{float(delay):g}"


def poly_to_pretty(coefficients: Sequence[float], variable: str = "s", digits: int = 6) -> str:
    """
    Human-readable polynomial, e.g. [3, 0.5] -> "3s + 0.5".
    """
    values = np.atleast_1d(np.asarray(coefficients, dtype=float))
    degree = len(values) - 1
    pieces = []
    for index, coefficient in enumerate(values):
        power = degree - index
        if coefficient == 0 and degree > 0:
            continue
        magnitude = abs(coefficient)
        if power == 0 or magnitude != 1:
            body = format_number(magnitude, digits)
        else:
            body = ""
        if power >= 1:
            body += variable if power == 1 else f"{variable}^{power}"
        sign = "-" if coefficient < 0 else "+"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces) if pieces else "0"


def format_complex(value: complex, digits: int = 6) -> str:
    if value.imag == 0:
        return format_number(value.real, digits)
    return f"{format_number(value.real, digits)}{value.imag:+.{digits}g}j"
