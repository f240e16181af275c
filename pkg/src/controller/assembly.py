import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.controller.synthesis import SynthesisData, ThetaSplit, split_theta
from src.errors import FirCertificationError, InterpolationError, PoleEvaluationError
from src.factorization import FactoredPlant, PlantCase
from src.lti import DelaySum, RationalFunction
from src.phi import FirBlock, common_rhp_zeros, phi_decompose
from src.qpoly import conjugate
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControllerForm:
    """
    C(s) = (H_n + F_n)/(H_d + F_d) with certified FIR blocks F_n, F_d.
    """
    case: PlantCase
    h_n: DelaySum
    f_n: FirBlock
    h_d: DelaySum
    f_d: FirBlock
    theta: ThetaSplit
    gamma_opt: float
    assembly_residual: float = float("nan")

    def numerator(self, s):
        return self.h_n.evaluate(s) + self.f_n.evaluate(s)

    def denominator(self, s):
        return self.h_d.evaluate(s) + self.f_d.evaluate(s)

    def evaluate(self, s):
        return self.numerator(s) / self.denominator(s)

    def __call__(self, s):
        return self.evaluate(s)


def evaluate_unsplit(fp: FactoredPlant, sd: SynthesisData, s):
    """
    Optimal controller m_d E F L N_o^{-1} / (1 + m_n F L) evaluated directly from the factors.
    """
    points = np.asarray(s, dtype=complex)
    efl = sd.e.evaluate(points) * sd.f.evaluate(points) * sd.l.evaluate(points)
    fl = sd.f.evaluate(points) * sd.l.evaluate(points)
    return fp.m_d.evaluate(points) * efl / fp.n_o.evaluate(points) / (1.0 + fp.m_n.evaluate(points) * fl)


def assembly_points(count: int = 64, seed: int = 1) -> np.ndarray:
    """Half in the open left half-plane, half on the imaginary axis."""
    rng = np.random.default_rng(seed)
    left = rng.uniform(-3.0, -0.05, count // 2) + 1j * rng.uniform(-5.0, 5.0, count // 2)
    axis = 1j * rng.uniform(0.05, 20.0, count - count // 2)
    return np.concatenate([left, axis])


def assembly_residual(form: ControllerForm, fp: FactoredPlant, sd: SynthesisData,
                      points: Optional[Sequence[complex]] = None) -> float:
    points = assembly_points() if points is None else np.asarray(points, dtype=complex)
    worst = 0.0
    for point in points:
        try:
            split = complex(form.evaluate(point))
            direct = complex(evaluate_unsplit(fp, sd, point))
        except PoleEvaluationError:
            continue
        if np.isfinite(split) and np.isfinite(direct):
            worst = max(worst, abs(split - direct) / max(abs(direct), np.finfo(float).tiny))
    return worst


def _theta(fp: FactoredPlant, sd: SynthesisData, tolerances: Tolerances) -> ThetaSplit:
    product = sd.e * sd.f * fp.m_d.rational * sd.l
    carried = [z for z in sd.e.zeros().expanded() if z.real > 0] + fp.m_d.zeros.expanded()
    return split_theta(product, carried, tolerances)


def _decompose(label: str, g: DelaySum, g0: RationalFunction, tolerances: Tolerances,
               zero_tolerance: Optional[float], fir_tolerance: Optional[float],
               horizon: Optional[float]) -> Tuple[DelaySum, FirBlock]:
    carrier_zeros = sum(m for z, m in g0.zeros() if z.real > 0)
    cancellations = common_rhp_zeros(g, g0, tolerances, zero_tolerance)
    cancelled = cancellations.complete.total
    if cancelled < carrier_zeros:
        raise InterpolationError(f"{label}: only {cancelled} of {carrier_zeros} C+ zeros of the carrier cancel; "
                                 "the synthesis data violates the interpolation conditions")
    try:
        return phi_decompose(g, g0, tolerances, zero_tolerance, fir_tolerance, horizon, cancellations=cancellations)
    except FirCertificationError as error:
        raise InterpolationError(f"{label}: {error}", error.record) from error


def assemble_c1(fp: FactoredPlant, sd: SynthesisData, tolerances: Tolerances = DEFAULT_TOLERANCES,
                zero_tolerance: Optional[float] = None, fir_tolerance: Optional[float] = None,
                horizon: Optional[float] = None) -> ControllerForm:
    """
    Controller for a C1 plant:
    H_n + F_n = Phi(theta_d q_d, m_{q_d}) and H_d + F_d = Phi(q_n e^{h_{n,1}s} (1 + m_n F L), theta_n m_{q_n}).

    Raises:
        ValueError: If the plant is not C1.
        InterpolationError: If a carrier zero is not cancelled or an FIR block fails certification.
    """
    if fp.case is not PlantCase.C1:
        raise ValueError("assemble_c1 needs a C1 plant")
    theta = _theta(fp, sd, tolerances)
    m_qd = fp.m_d.rational
    m_qn = fp.m_qn.rational
    numerator = DelaySum.from_quasi_polynomial(fp.plant.q_d) * theta.theta_d
    shifted = DelaySum.from_quasi_polynomial(fp.numerator_factors.shifted)
    denominator = shifted + (shifted * (m_qn * sd.f * sd.l)).delayed(fp.numerator_delay)

    h_n, f_n = _decompose("numerator", numerator, m_qd, tolerances, zero_tolerance, fir_tolerance, horizon)
    h_d, f_d = _decompose("denominator", denominator, theta.theta_n * m_qn, tolerances, zero_tolerance,
                          fir_tolerance, horizon)
    return _finish(PlantCase.C1, fp, sd, theta, h_n, f_n, h_d, f_d)


def assemble_c2(fp: FactoredPlant, sd: SynthesisData, tolerances: Tolerances = DEFAULT_TOLERANCES,
                zero_tolerance: Optional[float] = None, fir_tolerance: Optional[float] = None,
                horizon: Optional[float] = None) -> ControllerForm:
    """
    Controller for a C2 plant:
    H_n + F_n = Phi(theta_d q_d, m_{q_d}) and H_d + F_d = Phi(conj q_n + m_{conj q_n} q_n F L, theta_n m_{conj q_n}).

    Raises:
        ValueError: If the plant is not C2.
        InterpolationError: If a carrier zero is not cancelled or an FIR block fails certification.
    """
    if fp.case is not PlantCase.C2:
        raise ValueError("assemble_c2 needs a C2 plant")
    theta = _theta(fp, sd, tolerances)
    m_qd = fp.m_d.rational
    m_conj = fp.m_qn.rational
    numerator = DelaySum.from_quasi_polynomial(fp.plant.q_d) * theta.theta_d
    denominator = (DelaySum.from_quasi_polynomial(conjugate(fp.plant.q_n))
                   + DelaySum.from_quasi_polynomial(fp.plant.q_n) * (m_conj * sd.f * sd.l))

    h_n, f_n = _decompose("numerator", numerator, m_qd, tolerances, zero_tolerance, fir_tolerance, horizon)
    h_d, f_d = _decompose("denominator", denominator, theta.theta_n * m_conj, tolerances, zero_tolerance,
                          fir_tolerance, horizon)
    return _finish(PlantCase.C2, fp, sd, theta, h_n, f_n, h_d, f_d)


def _finish(case, fp, sd, theta, h_n, f_n, h_d, f_d) -> ControllerForm:
    form = ControllerForm(case, h_n, f_n, h_d, f_d, theta, sd.gamma_opt)
    residual = assembly_residual(form, fp, sd)
    logger.debug("assembled %s controller, assembly residual %.3e", case.value, residual)
    return ControllerForm(case, h_n, f_n, h_d, f_d, theta, sd.gamma_opt, residual)


def assemble(fp: FactoredPlant, sd: SynthesisData, tolerances: Tolerances = DEFAULT_TOLERANCES,
             **options) -> ControllerForm:
    """Dispatches on the factorization case."""
    if fp.case is PlantCase.C1:
        return assemble_c1(fp, sd, tolerances, **options)
    return assemble_c2(fp, sd, tolerances, **options)
