import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.errors import GammaComputationError, ImaginaryAxisRootError, SynthesisDataError
from src.factorization import blaschke
from src.lti import RationalFunction
from src.rootfinder import RootSet
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightPair:
    w1: RationalFunction
    w2: Optional[RationalFunction] = None

    def __post_init__(self):
        if not self.w1.is_proper:
            raise SynthesisDataError(f"W1 = {self.w1} must be proper")
        # Control-effort weights such as 0.2(s + 1.1) are improper
        if self.w2 is not None and not self.w2.is_proper:
            logger.warning("W2 = %s is improper", self.w2)


@dataclass(frozen=True)
class SynthesisData:
    """
    Optimal level and the rational E, F, L of the optimal controller. They are inputs; nothing here computes them.
    """
    gamma_opt: float
    e: RationalFunction
    f: RationalFunction
    l: RationalFunction

    def __post_init__(self):
        if not self.gamma_opt > 0:
            raise SynthesisDataError(f"gamma_opt must be positive, got {self.gamma_opt}")


# Weights and optimal levels of the reference designs, carried as metadata
REFERENCE_DESIGNS = {
    "P1": {"w1": RationalFunction((0.1, 1.0), (1.0, 2.0)), "w2": None, "gamma_opt": 1.8595},
    "P2": {"w1": RationalFunction((0.1, 1.0), (1.0, 2.0)), "w2": RationalFunction((0.2, 0.22)), "gamma_opt": 0.9579},
    "P3": {"w1": RationalFunction((1.0, 1.0), (10.0, 1.0)), "w2": RationalFunction((0.5,)), "gamma_opt": 0.5534},
}


def compute_gamma_opt(*args, **kwargs) -> float:
    """
    Always refuses: the optimal level comes from a minimum-singular-value sweep that is not implemented here.

    Raises:
        GammaComputationError: Every time.
    """
    raise GammaComputationError("gamma_opt is an input; supply it (with E, F, L) in the synthesis data")


@dataclass(frozen=True)
class ThetaSplit:
    theta_n: RationalFunction
    theta_d: RationalFunction

    def evaluate(self, s):
        return self.theta_n.evaluate(s) * self.theta_d.evaluate(s)


def split_theta(product: RationalFunction, zeros: Optional[Sequence[complex]] = None,
                tolerances: Tolerances = DEFAULT_TOLERANCES) -> ThetaSplit:
    """
    Splits a rational product into a biproper carrier of C+ zeros and the rest.

    Args:
        product (RationalFunction): E F m_{q_d} L.
        zeros (Sequence[complex], optional): The C+ zeros to carry (those of E m_{q_d}); all C+ zeros of the
            product by default.
        tolerances (Tolerances): ``axis_guard`` for zeros on the imaginary axis.

    Returns:
        ThetaSplit: theta_n = prod (s - z)/(s + conj z), theta_d = product / theta_n.

    Raises:
        ImaginaryAxisRootError: If a zero lies on the imaginary axis.
        ValueError: If the product is identically zero.
    """
    if product.is_zero:
        raise ValueError("cannot split the zero function")
    if zeros is None:
        candidates = product.zeros()
        for root in candidates.roots:
            if abs(root.real) <= tolerances.axis_guard:
                raise ImaginaryAxisRootError(f"zero {root:.6g} of the product lies on the imaginary axis")
        carried = RootSet.from_pairs([(z, m) for z, m in candidates if z.real > 0])
    else:
        carried = RootSet.from_roots(list(zeros))
    theta_n = blaschke(carried, tolerances).rational

    quotient, remainder = np.polydiv(np.asarray(product.numerator), np.asarray(theta_n.numerator))
    if np.max(np.abs(remainder), initial=0.0) <= 1e-8 * max(1.0, np.max(np.abs(product.numerator))):
        theta_d = RationalFunction(tuple(np.polymul(quotient, theta_n.denominator)), product.denominator).reduced()
    else:
        logger.debug("carried zeros do not divide the product numerator, keeping theta_d unreduced")
        theta_d = product * theta_n.inverse()
    return ThetaSplit(theta_n, theta_d)
