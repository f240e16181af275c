import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.errors import FirCertificationError, PoleEvaluationError, RealizabilityError
from src.lti import DelaySum, RationalFunction, partial_fraction_split
from src.phi.certification import FirBlock, certify_fir
from src.rootfinder import RootSet
from src.tolerances import DEFAULT_TOLERANCES, Tolerances
from src.utils import poly_scale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CancellationSet:
    """
    Common C+ zeros of G and G0. ``zeros`` holds the common order of each point and ``carrier_orders`` its
    multiplicity as a zero of G0; only points where both agree cancel completely.
    """
    zeros: RootSet = RootSet()
    carrier_orders: Tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.zeros)

    @property
    def is_empty(self) -> bool:
        return len(self.zeros) == 0

    @property
    def complete(self) -> RootSet:
        """Points whose full G0 multiplicity is shared by G."""
        return RootSet.from_pairs([(z, m) for (z, m), carrier in zip(self.zeros, self.carrier_orders) if m == carrier])

    @property
    def partial(self) -> RootSet:
        return RootSet.from_pairs([(z, m) for (z, m), carrier in zip(self.zeros, self.carrier_orders) if m < carrier])


def _coefficient_scale(g: DelaySum, point: complex) -> float:
    """sum_i (sum_k |n_ik| |s|^k) |e^{-h_i s}| / |d_i(s)|; nonzero even where every term of g vanishes."""
    total = 0.0
    for r, h in g.terms:
        size = float(poly_scale(r.num, point)) * abs(np.exp(-float(h) * point))
        total += size / abs(complex(np.polyval(r.den, point)))
    return total


def _vanishing_order(g: DelaySum, point: complex, limit: int, tolerance: float) -> int:
    order = 0
    current = g
    while order < limit:
        value = complex(current.evaluate(point))
        if abs(value) > tolerance * _coefficient_scale(current, point):
            break
        order += 1
        current = current.derivative()
    return order


def common_rhp_zeros(g: DelaySum, g0: RationalFunction, tolerances: Tolerances = DEFAULT_TOLERANCES,
                     zero_tolerance: Optional[float] = None) -> CancellationSet:
    """
    C+ zeros of the biproper G0 at which G vanishes too, with the common order.

    Args:
        g (DelaySum): The delay sum.
        g0 (RationalFunction): Biproper rational carrier.
        tolerances (Tolerances): ``zero_residual`` is the default relative vanishing threshold.
        zero_tolerance (float, optional): Override for rounded input data.

    Returns:
        CancellationSet: Possibly empty; an empty set is reported in the log.

    Raises:
        RealizabilityError: If G0 is not biproper.
    """
    if not g0.is_biproper:
        raise RealizabilityError(f"G0 = {g0} must be biproper")
    tolerance = tolerances.zero_residual if zero_tolerance is None else zero_tolerance
    pairs, carrier_orders = [], []
    for zero, multiplicity in g0.zeros():
        if zero.real <= 0:
            continue
        try:
            order = _vanishing_order(g, zero, multiplicity, tolerance)
        except PoleEvaluationError:
            logger.warning("G has a pole at the C+ zero %s of G0", zero)
            continue
        if order:
            pairs.append((zero, order))
            carrier_orders.append(multiplicity)
    if not pairs:
        logger.warning("G and G0 share no C+ zeros, the decomposition is the plain quotient")
    ordered = RootSet.from_pairs(pairs)
    lookup = {z: m for (z, _), m in zip(pairs, carrier_orders)}
    return CancellationSet(ordered, tuple(lookup[z] for z in ordered.roots))


def phi_decompose(g: DelaySum, g0: RationalFunction, tolerances: Tolerances = DEFAULT_TOLERANCES,
                  zero_tolerance: Optional[float] = None, fir_tolerance: Optional[float] = None,
                  horizon: Optional[float] = None, certify: bool = True,
                  cancellations: Optional[CancellationSet] = None) -> Tuple[DelaySum, FirBlock]:
    """
    Splits G/G0 = H + F where F collects, term by term, the principal parts of G_i/G0 at the common C+ zeros.

    F is then an FIR block supported on [0, h_v] and H has no poles at those zeros.

    Args:
        g (DelaySum): G = sum_i G_i e^{-h_i s}.
        g0 (RationalFunction): Biproper carrier G0.
        tolerances (Tolerances): Default thresholds.
        zero_tolerance (float, optional): Relative vanishing threshold for the common zeros.
        fir_tolerance (float, optional): Certification tolerance (``tolerances.fir_tolerance`` by default).
        horizon (float, optional): Certification horizon.
        certify (bool): Whether to certify the FIR block.
        cancellations (CancellationSet, optional): Common zeros already found by common_rhp_zeros for this G and G0.

    Returns:
        tuple: (H, F) with H a delay sum and F a certified FirBlock.

    Raises:
        RealizabilityError: If G0 is not biproper.
        PartialFractionError: If a term cannot be split.
        FirCertificationError: If F fails certification (the common zeros were mis-detected).
    """
    if cancellations is None:
        cancellations = common_rhp_zeros(g, g0, tolerances, zero_tolerance)
    elif not g0.is_biproper:
        raise RealizabilityError(f"G0 = {g0} must be biproper")
    complete = cancellations.complete
    if len(cancellations.partial):
        logger.warning("G shares only part of the multiplicity of %s with G0", list(cancellations.partial.roots))
    inverse = g0.inverse()
    if len(complete) == 0:
        return g * inverse, FirBlock(DelaySum(), g.max_delay, certify_fir(DelaySum(), g.max_delay) if certify else None)

    regular, finite = [], []
    for rational, delay in g.terms:
        h_part, f_part = partial_fraction_split(rational * inverse, complete, tolerances)
        regular.append((h_part, delay))
        finite.append((f_part, delay))
    h = DelaySum(tuple(regular), allow_improper=True)
    f = DelaySum(tuple(finite))

    for rational in h.rationals:
        unstable = [pole for pole in rational.poles().roots if pole.real > 0]
        if unstable:
            logger.warning("H keeps unstable poles %s outside the cancellation set", unstable)

    support = g.max_delay
    certification = None
    if certify:
        tolerance = tolerances.fir_tolerance if fir_tolerance is None else fir_tolerance
        certification = certify_fir(f, support, tolerance, horizon, tolerances.certification_samples)
        if not certification.passed:
            raise FirCertificationError(
                f"F is not FIR on [0, {float(support):g}] (relative tail {certification.relative_tail:.3e})",
                certification)
    return h, FirBlock(f, support, certification)


def decomposition_residual(g: DelaySum, g0: RationalFunction, h: DelaySum, f: FirBlock, points=None,
                           seed: int = 0) -> float:
    """
    Largest |H + F - G/G0| relative to |G/G0| over random off-pole points of [-1, 3] x [-5, 5].
    """
    if points is None:
        rng = np.random.default_rng(seed)
        points = rng.uniform(-1.0, 3.0, 64) + 1j * rng.uniform(-5.0, 5.0, 64)
    worst = 0.0
    for point in np.asarray(points, dtype=complex):
        try:
            direct = complex(g.evaluate(point)) / complex(g0.evaluate(point))
            split = complex(h.evaluate(point)) + complex(f.evaluate(point))
        except (PoleEvaluationError, ZeroDivisionError):
            continue
        if np.isfinite(direct) and np.isfinite(split):
            worst = max(worst, abs(split - direct) / max(abs(direct), 1.0))
    return worst
