import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from src.documents import FirCertificationDocument, significant
from src.lti import DelaySum, impulse_response, residue_table
from src.tolerances import DEFAULT_TOLERANCES
from src.utils import format_delay

logger = logging.getLogger(__name__)

MIN_TAIL_SAMPLES = 200


@dataclass(frozen=True)
class FirCertification:
    """
    Evidence that an impulse response vanishes after the support end, both sampled (tail against the peak on
    [0, support]) and algebraic (the polynomial-in-t tail coefficients at every pole).
    """
    support: Fraction
    horizon: float
    tolerance: float
    samples: int
    peak: float
    max_tail: float
    relative_tail: float
    tail_coefficients: float
    behavioural_passed: bool
    algebraic_passed: bool
    growth_rate: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.behavioural_passed and self.algebraic_passed

    def to_text(self) -> str:
        lines = [
            f"support: [0, {format_delay(self.support)}]",
            f"horizon: {self.horizon:.6g}",
            f"tolerance: {self.tolerance:.3g}",
            f"samples: {self.samples}",
            f"peak on support: {self.peak:.6e}",
            f"max tail residual: {self.max_tail:.6e}",
            f"relative tail residual: {self.relative_tail:.6e}",
            f"tail coefficient residual: {self.tail_coefficients:.6e}",
            f"result: {'pass' if self.passed else 'fail'}",
        ]
        if not self.passed and self.growth_rate is not None:
            lines.append(f"tail growth rate: {self.growth_rate:.6g}")
        return "\n".join(lines)

    def to_document(self) -> FirCertificationDocument:
        return FirCertificationDocument(
            support=str(self.support), horizon=self.horizon, tolerance=self.tolerance, samples=self.samples,
            peak=significant(self.peak), max_tail=significant(self.max_tail),
            relative_tail=significant(self.relative_tail), tail_coefficients=significant(self.tail_coefficients),
            passed=self.passed, growth_rate=None if self.growth_rate is None else significant(self.growth_rate),
        )


@dataclass(frozen=True)
class FirBlock:
    """A delay sum whose impulse response is (to be) supported on [0, support_end]."""
    delay_sum: DelaySum
    support_end: Fraction
    certification: Optional[FirCertification] = None

    @property
    def is_zero(self) -> bool:
        return self.delay_sum.is_zero

    @property
    def certified(self) -> bool:
        return self.certification is not None and self.certification.passed

    def evaluate(self, s):
        return self.delay_sum.evaluate(s)

    def __call__(self, s):
        return self.evaluate(s)

    def impulse_response(self, grid) -> np.ndarray:
        return impulse_response(self.delay_sum, grid)


def _pole_groups(f: DelaySum) -> List[Tuple[complex, List[Tuple[Fraction, Tuple[complex, ...]]]]]:
    """Principal parts of every term, grouped by (numerically) equal poles."""
    groups: List[Tuple[complex, List]] = []
    for rational, delay in f.terms:
        for pole, coefficients in residue_table(rational):
            for anchor, members in groups:
                if abs(anchor - pole) <= 1e-6 * max(1.0, abs(anchor)):
                    members.append((delay, coefficients))
                    break
            else:
                groups.append((pole, [(delay, coefficients)]))
    return groups


def tail_coefficient_residual(f: DelaySum) -> float:
    """
    Largest relative tail coefficient: for t > max delay the response is sum_p e^{pt} sum_r a_{p,r} t^r and every
    a_{p,r} must vanish; each one is compared with the magnitude of the contributions that form it.
    """
    worst = 0.0
    for pole, members in _pole_groups(f):
        order = max(len(coefficients) for _, coefficients in members)
        for power in range(order):
            total, scale = 0j, 0.0
            for delay, coefficients in members:
                h = float(delay)
                shift = np.exp(-pole * h)
                for j, c in enumerate(coefficients, start=1):
                    if j - 1 < power:
                        continue
                    piece = shift * c / math.factorial(j - 1) * math.comb(j - 1, power) * (-h) ** (j - 1 - power)
                    total += piece
                    scale += abs(piece)
            if scale > 0:
                worst = max(worst, abs(total) / scale)
    return worst


def default_horizon(f: DelaySum, support: float) -> float:
    """max(3 * support, 5 / smallest positive pole real part)."""
    horizon = 3.0 * support
    positive = [pole.real for pole, _ in _pole_groups(f) if pole.real > 0]
    if positive:
        horizon = max(horizon, 5.0 / min(positive))
    return horizon if horizon > 0 else 1.0


def certify_fir(f: DelaySum, support=None, tolerance: float = DEFAULT_TOLERANCES.fir_tolerance,
                horizon: Optional[float] = None, samples: int = DEFAULT_TOLERANCES.certification_samples,
                algebraic_tolerance: Optional[float] = None) -> FirCertification:
    """
    Checks that the impulse response of f vanishes on (support, support + horizon].

    Args:
        f (DelaySum): Strictly proper delay sum.
        support: End of the expected support (defaults to the largest delay of f).
        tolerance (float): Allowed tail relative to the peak on [0, support].
        horizon (float, optional): Length of the sampled tail; max(3 support, 5 / min Re pole) by default.
        samples (int): Samples on the support and on the tail (at least 200 on the tail).
        algebraic_tolerance (float, optional): Allowed relative tail coefficient (defaults to ``tolerance``).

    Returns:
        FirCertification: The record; failure is an outcome, not an exception.
    """
    support = f.max_delay if support is None else Fraction(support)
    if f.is_zero:
        return FirCertification(support, 0.0 if horizon is None else horizon, tolerance, 0, 0.0, 0.0, 0.0, 0.0,
                                True, True)
    end = float(support)
    horizon = default_horizon(f, end) if horizon is None else float(horizon)
    algebraic_tolerance = tolerance if algebraic_tolerance is None else algebraic_tolerance

    head = np.linspace(0.0, end, max(samples, 2)) if end > 0 else np.zeros(1)
    tail_count = max(MIN_TAIL_SAMPLES, samples)
    tail = end + horizon * np.linspace(0.0, 1.0, tail_count + 1)[1:]
    peak = float(np.max(np.abs(impulse_response(f, head))))
    tail_values = impulse_response(f, tail)
    max_tail = float(np.max(np.abs(tail_values))) if np.all(np.isfinite(tail_values)) else math.inf
    relative_tail = max_tail / peak if peak > 0 else max_tail
    coefficients = tail_coefficient_residual(f)

    behavioural = relative_tail <= tolerance
    algebraic = coefficients <= algebraic_tolerance
    growth = max((pole.real for pole, _ in _pole_groups(f)), default=None)
    if not (behavioural and algebraic):
        logger.warning("FIR certification failed: relative tail %.3e, tail coefficients %.3e, growth rate %s",
                       relative_tail, coefficients, growth)
    return FirCertification(support, horizon, tolerance, len(head) + tail_count, peak, max_tail, relative_tail,
                            coefficients, behavioural, algebraic, growth)
