import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.errors import PartialFractionError, RealizabilityError
from src.lti.delay_sum import DelaySum
from src.lti.rational import ZERO, RationalFunction
from src.rootfinder import RootSet
from src.tolerances import DEFAULT_TOLERANCES, Tolerances
from src.utils import poly_from_roots, poly_scale, series_divide, synthetic_division, taylor_coefficients

logger = logging.getLogger(__name__)

# Time offset below which u(t - h) is already switched on
STEP_SLACK = 1e-12


@dataclass(frozen=True)
class ResidueTable:
    """
    Principal parts of a rational function: ``coefficients[i][k - 1]`` multiplies 1/(s - poles[i])^k.
    """
    poles: Tuple[complex, ...] = ()
    coefficients: Tuple[Tuple[complex, ...], ...] = ()

    def __iter__(self):
        return iter(zip(self.poles, self.coefficients))

    def __len__(self) -> int:
        return len(self.poles)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.coefficients)

    def residue(self, pole: complex, tolerance: float = 1e-9) -> complex:
        """Coefficient of 1/(s - pole)."""
        for candidate, coefficients in self:
            if abs(candidate - pole) <= tolerance * max(1.0, abs(pole)):
                return coefficients[0]
        raise KeyError(pole)

    def is_conjugate_symmetric(self, tolerance: float = 1e-9) -> bool:
        for pole, coefficients in self:
            try:
                partner = self.residue(pole.conjugate(), tolerance)
            except KeyError:
                return False
            if abs(partner - np.conj(coefficients[0])) > tolerance * max(1.0, abs(partner)):
                return False
        return True

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"pole_re": p.real, "pole_im": p.imag, "order": k, "re": c.real, "im": c.imag}
            for p, coefficients in self for k, c in enumerate(coefficients, start=1)
        ]
        return pd.DataFrame(rows, columns=["pole_re", "pole_im", "order", "re", "im"])


def pole_order(denominator: Sequence[float], point: complex,
               tolerance: float = DEFAULT_TOLERANCES.zero_residual) -> Tuple[int, np.ndarray]:
    """
    Multiplicity of ``point`` as a root of the denominator, by repeated synthetic division.

    Returns:
        tuple: (multiplicity, deflated denominator).
    """
    remaining = np.asarray(denominator, dtype=complex)
    order = 0
    while len(remaining) > 1:
        quotient, remainder = synthetic_division(remaining, point)
        if abs(remainder) > tolerance * max(float(poly_scale(remaining, point)), np.finfo(float).tiny):
            break
        order += 1
        remaining = quotient
    return order, remaining


def laurent_coefficients(numerator: Sequence[float], denominator: Sequence[float], pole: complex,
                         order: int) -> Tuple[complex, ...]:
    """
    Principal-part coefficients c_1..c_m of N/D at a pole of order m, from Taylor shifts of N and of
    D/(s - pole)^m, without numerical differentiation.
    """
    deflated = np.asarray(denominator, dtype=complex)
    for _ in range(order):
        deflated, _ = synthetic_division(deflated, pole)
    shifted_numerator = taylor_coefficients(numerator, pole, order)
    shifted_denominator = taylor_coefficients(deflated, pole, order)
    if shifted_denominator[0] == 0:
        raise PartialFractionError(f"pole {pole} has a higher order than {order}")
    series = series_divide(shifted_numerator, shifted_denominator, order)
    return tuple(complex(series[order - k]) for k in range(1, order + 1))


def residue_table(r: RationalFunction) -> ResidueTable:
    """
    Principal parts at every pole of r, respecting multiplicities.

    Args:
        r (RationalFunction): The rational function.

    Returns:
        ResidueTable: Poles in RootSet order with their Laurent coefficients.
    """
    poles, coefficients = [], []
    for pole, multiplicity in r.poles():
        poles.append(pole)
        coefficients.append(laurent_coefficients(r.numerator, r.denominator, pole, multiplicity))
    return ResidueTable(tuple(poles), tuple(coefficients))


def _as_pairs(poles: Union[RootSet, Iterable]) -> List[Tuple[complex, Optional[int]]]:
    """(pole, order) pairs; a bare value has no stated order and takes the multiplicity it has in r."""
    if isinstance(poles, RootSet):
        return list(poles)
    pairs = []
    for item in poles:
        if isinstance(item, tuple):
            pairs.append((complex(item[0]), int(item[1])))
        else:
            pairs.append((complex(item), None))
    return pairs


def partial_fraction_split(r: RationalFunction, poles, tolerances: Tolerances = DEFAULT_TOLERANCES
                           ) -> Tuple[RationalFunction, RationalFunction]:
    """
    Splits r = H + F where F collects the principal parts at the given poles.

    F is strictly proper with exactly those poles and H keeps the rest. A principal part always spans the full
    multiplicity of its pole in r, so a stated order must equal that multiplicity.

    Args:
        r (RationalFunction): The function to split.
        poles: RootSet, complex values or (pole, order) pairs; must be conjugate-symmetric. Bare values take
            their multiplicity in r.
        tolerances (Tolerances): ``zero_residual`` decides whether a point is a pole.

    Returns:
        tuple: (H, F) as RationalFunctions.

    Raises:
        PartialFractionError: If a point is not a pole of r, a stated order differs from the multiplicity, or the
            set is not closed under conjugation.
    """
    pairs = _as_pairs(poles)
    if not pairs:
        return r, ZERO

    parts = []
    for pole, order in pairs:
        multiplicity, _ = pole_order(r.denominator, pole, tolerances.zero_residual)
        if multiplicity == 0:
            raise PartialFractionError(f"{pole:.6g} is not a pole of {r.to_pretty()}")
        if order is not None and order > multiplicity:
            raise PartialFractionError(f"order {order} at {pole:.6g} exceeds the pole multiplicity {multiplicity}")
        if order is not None and order < multiplicity:
            raise PartialFractionError(f"order {order} at {pole:.6g} is below the pole multiplicity {multiplicity}")
        parts.append((pole, multiplicity, laurent_coefficients(r.numerator, r.denominator, pole, multiplicity)))

    for pole, multiplicity, _ in parts:
        if abs(pole.imag) <= 1e-12 * max(1.0, abs(pole)):
            continue
        if not any(abs(other - pole.conjugate()) <= 1e-9 * max(1.0, abs(pole)) and m == multiplicity
                   for other, m, _ in parts):
            raise PartialFractionError(f"pole set is not conjugate-symmetric at {pole:.6g}")

    carrier_roots = [pole for pole, multiplicity, _ in parts for _ in range(multiplicity)]
    carrier = poly_from_roots(carrier_roots, real=True)

    numerator = np.zeros(1, dtype=complex)
    for index, (pole, multiplicity, coefficients) in enumerate(parts):
        others = [other for j, (other, m, _) in enumerate(parts) if j != index for _ in range(m)]
        for k, coefficient in enumerate(coefficients, start=1):
            basis = poly_from_roots([pole] * (multiplicity - k) + others, real=False)
            numerator = np.polyadd(numerator, coefficient * basis)
    if np.max(np.abs(numerator.imag)) > 1e-8 * max(1.0, np.max(np.abs(numerator))):
        logger.warning("principal-part numerator keeps an imaginary part of %.2e", np.max(np.abs(numerator.imag)))
    numerator = numerator.real

    remaining, remainder = np.polydiv(np.asarray(r.denominator), carrier)
    if np.max(np.abs(remainder), initial=0.0) > 1e-6 * max(1.0, np.max(np.abs(r.denominator))):
        raise PartialFractionError("pole carrier does not divide the denominator")
    top = np.polysub(np.asarray(r.numerator), np.polymul(numerator, remaining))
    regular, leftover = np.polydiv(top, carrier)
    if np.max(np.abs(leftover), initial=0.0) > 1e-6 * max(1.0, np.max(np.abs(top))):
        raise PartialFractionError(f"regular part keeps poles of the carrier (remainder {np.max(np.abs(leftover)):.2e})")
    return RationalFunction(tuple(regular), tuple(remaining)), RationalFunction(tuple(numerator), tuple(carrier))


def impulse_response(g: Union[DelaySum, RationalFunction], grid: Sequence[float]) -> np.ndarray:
    """
    Impulse response on a time grid by the residue formula

        f(t) = sum_k sum_poles sum_j c_{k,p,j} (t - h_k)^{j-1}/(j-1)! e^{p (t - h_k)} u(t - h_k),

    with u right-continuous, so f(h_k) already includes the contribution of term k.

    Args:
        g: A delay sum (or a single rational function) with strictly proper rational parts.
        grid (Sequence[float]): Time samples.

    Returns:
        np.ndarray: Real samples f(t).

    Raises:
        RealizabilityError: For a biproper or improper rational part (distributional response).
    """
    if isinstance(g, RationalFunction):
        g = DelaySum.from_rational(g)
    times = np.asarray(grid, dtype=float)
    total = np.zeros(times.shape, dtype=complex)
    for rational, delay in g.terms:
        if not rational.is_strictly_proper:
            raise RealizabilityError(f"term {rational} at delay {delay} is not strictly proper")
        shifted = times - float(delay)
        active = shifted >= -STEP_SLACK
        tau = np.where(active, np.maximum(shifted, 0.0), 0.0)
        with np.errstate(over="ignore", invalid="ignore"):
            for pole, coefficients in residue_table(rational):
                growth = np.exp(pole * tau)
                for k, coefficient in enumerate(coefficients, start=1):
                    total += np.where(active, coefficient * tau ** (k - 1) / math.factorial(k - 1) * growth, 0.0)
    peak = np.max(np.abs(total), initial=0.0)
    imaginary = np.max(np.abs(total.imag), initial=0.0)
    if imaginary > 1e-10 * max(peak, np.finfo(float).tiny):
        logger.warning("impulse response keeps an imaginary part of %.2e (peak %.2e)", imaginary, peak)
    return total.real
