import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.errors import NotAdmissibleError, PoleEvaluationError, RealizabilityError
from src.factorization.inner_outer import (InnerRational, QuasiPolynomialFactors, conjugate_factors, direct_factors)
from src.lti import QuasiPolynomialRatio, RatioExpression
from src.qpoly import QuasiPolynomial, Term, conjugate, evaluate, parse, term_scale
from src.rootfinder import (Finiteness, FinitenessVerdict, Rectangle, RootSet, finiteness_rhp,
                            finiteness_rhp_conjugate, winding_number)
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlantDescription:
    """
    P(s) = q_n(s)/q_d(s). Realizability: the first numerator term has degree at most that of the first
    denominator term and a delay at least as large.
    """
    q_n: QuasiPolynomial
    q_d: QuasiPolynomial

    def __post_init__(self):
        if self.q_n.terms[0].degree > self.q_d.terms[0].degree:
            raise RealizabilityError("numerator outgrows the denominator")
        if self.q_n.min_delay < self.q_d.min_delay:
            raise RealizabilityError("numerator starts before the denominator (non-causal)")

    def normalized(self) -> "PlantDescription":
        """Same plant with the first denominator delay moved out of both quasi-polynomials."""
        shift = self.q_d.min_delay
        if shift == 0:
            return self

        def _shift(q):
            return QuasiPolynomial(tuple(Term(t.coefficients, t.delay - shift) for t in q.terms))

        return PlantDescription(_shift(self.q_n), _shift(self.q_d))

    def evaluate(self, s):
        return evaluate(self.q_n, s) / evaluate(self.q_d, s)

    def __call__(self, s):
        return self.evaluate(s)


def plant_from_strings(numerator: str, denominator: str) -> PlantDescription:
    return PlantDescription(parse(numerator), parse(denominator))


class PlantCase(str, Enum):
    C1 = "C1"
    C2 = "C2"
    NOT_ADMISSIBLE = "NotAdmissible"


@dataclass(frozen=True)
class PlantClassification:
    case: PlantCase
    reason: str = ""
    verdicts: Dict[str, FinitenessVerdict] = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        return self.case is not PlantCase.NOT_ADMISSIBLE


def _failure(label: str, verdict: FinitenessVerdict) -> str:
    if verdict.status is Finiteness.INDETERMINATE:
        return f"indeterminate: {label} has an asymptotic root on the unit circle"
    return f"{label} has infinitely many roots in C+ ({verdict.reason})"


def classify_plant(plant: PlantDescription, tolerances: Tolerances = DEFAULT_TOLERANCES) -> PlantClassification:
    """
    Decides which coprime factorization applies.

    Args:
        plant (PlantDescription): The plant.
        tolerances (Tolerances): Unit-circle band for the finiteness tests.

    Returns:
        PlantClassification: C1 if q_n and q_d have finitely many C+ roots, else C2 if the conjugate of q_n and
            q_d do, else NotAdmissible with the failing condition.
    """
    verdicts = {
        "q_d": finiteness_rhp(plant.q_d, tolerances),
        "q_n": finiteness_rhp(plant.q_n, tolerances),
        "conj(q_n)": finiteness_rhp_conjugate(plant.q_n, tolerances),
    }
    if not verdicts["q_d"].is_finite:
        return PlantClassification(PlantCase.NOT_ADMISSIBLE, _failure("denominator", verdicts["q_d"]), verdicts)
    if verdicts["q_n"].is_finite:
        return PlantClassification(PlantCase.C1, "numerator and denominator have finitely many C+ roots", verdicts)
    if verdicts["conj(q_n)"].is_finite:
        return PlantClassification(PlantCase.C2, "conjugate numerator and denominator have finitely many C+ roots",
                                   verdicts)
    reason = _failure("numerator", verdicts["q_n"])
    if Finiteness.INDETERMINATE in (verdicts["q_n"].status, verdicts["conj(q_n)"].status):
        reason = "indeterminate: numerator and its conjugate are not decided"
    return PlantClassification(PlantCase.NOT_ADMISSIBLE, reason, verdicts)


def check_coprime(q_n: QuasiPolynomial, q_d: QuasiPolynomial, denominator_roots: RootSet,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> List[complex]:
    """
    C+ roots of q_d at which q_n vanishes as well; each one is reported as a warning.
    """
    shared = []
    for root in denominator_roots.roots:
        if abs(evaluate(q_n, root)) <= tolerances.zero_residual * float(term_scale(q_n, root)):
            shared.append(root)
            logger.warning("numerator and denominator share the C+ root %s", root)
    return shared


@dataclass(frozen=True)
class FactoredPlant:
    """
    P = m_n N_o / m_d with m_n inner, m_d rational inner and N_o outer.
    """
    case: PlantCase
    plant: PlantDescription
    m_n: RatioExpression
    m_d: InnerRational
    n_o: RatioExpression
    numerator_factors: QuasiPolynomialFactors
    denominator_factors: QuasiPolynomialFactors
    classification: PlantClassification
    shared_roots: tuple = ()

    @property
    def m_qn(self) -> InnerRational:
        """Blaschke part of the numerator side (of q_n in C1, of its conjugate in C2)."""
        return self.numerator_factors.carrier

    @property
    def numerator_delay(self):
        return self.numerator_factors.delay

    def evaluate(self, s):
        return self.m_n.evaluate(s) * self.n_o.evaluate(s) / self.m_d.evaluate(s)


def factor_plant(plant: PlantDescription, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FactoredPlant:
    """
    Coprime inner/outer factorization.

    C1: m_n = m_{q_n} e^{-h_{n,1}s}, m_d = m_{q_d}, N_o = (q_n e^{h_{n,1}s} / m_{q_n})(m_{q_d} / q_d).
    C2: m_n = m_{conj q_n} (q_n / conj q_n), m_d = m_{q_d}, N_o = (conj q_n / m_{conj q_n})(m_{q_d} / q_d).

    Args:
        plant (PlantDescription): The plant; a leading denominator delay is factored out first.
        tolerances (Tolerances): Root search and guard settings.

    Returns:
        FactoredPlant: The factors with the root data used to build them.

    Raises:
        NotAdmissibleError: If neither case applies.
    """
    plant = plant.normalized()
    classification = classify_plant(plant, tolerances)
    if not classification.admissible:
        raise NotAdmissibleError(classification.reason)

    denominator = direct_factors(plant.q_d, tolerances)
    m_d = denominator.carrier
    if classification.case is PlantCase.C1:
        numerator = direct_factors(plant.q_n, tolerances)
        outer_top = numerator.shifted
    else:
        numerator = conjugate_factors(plant.q_n, tolerances)
        outer_top = conjugate(plant.q_n)
    m_n = numerator.inner
    n_o = RatioExpression.of(QuasiPolynomialRatio(outer_top, plant.q_d),
                             numerator.carrier.rational.inverse() * m_d.rational)
    shared = check_coprime(plant.q_n, plant.q_d, denominator.search.roots, tolerances)
    logger.debug("factored plant as %s: m_n = %s, m_d = %s", classification.case.value, m_n, m_d.to_pretty())
    return FactoredPlant(classification.case, plant, m_n, m_d, n_o, numerator, denominator, classification,
                         tuple(shared))


def sample_points(count: int = 64, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 3.0, count) + 1j * rng.uniform(-5.0, 5.0, count)


def reconstruction_residual(fp: FactoredPlant, points: Optional[Sequence[complex]] = None) -> float:
    """
    Largest relative gap between m_n N_o / m_d and q_n / q_d over off-pole sample points.
    """
    points = sample_points() if points is None else np.asarray(points, dtype=complex)
    worst = 0.0
    for point in points:
        try:
            factored = complex(fp.evaluate(point))
            direct = complex(fp.plant.evaluate(point))
        except PoleEvaluationError:
            continue
        if not (np.isfinite(factored) and np.isfinite(direct)):
            continue
        worst = max(worst, abs(factored - direct) / max(abs(direct), np.finfo(float).tiny))
    return worst


def inner_deviation(fp: FactoredPlant, omegas: Optional[Sequence[float]] = None) -> Dict[str, float]:
    """
    max | |m(j omega)| - 1 | for m_n and m_d over a frequency grid (log grid 1e-2..1e3 by default).
    """
    omegas = np.logspace(-2, 3, 200) if omegas is None else np.asarray(omegas, dtype=float)
    points = 1j * omegas
    return {
        "m_n": float(np.max(np.abs(np.abs(fp.m_n.evaluate(points)) - 1.0))),
        "m_d": float(np.max(np.abs(np.abs(fp.m_d.evaluate(points)) - 1.0))),
    }


def _quotient_winding(q: QuasiPolynomial, carrier: InnerRational, region: Rectangle) -> int:
    def func(s):
        return evaluate(q, s) / np.polyval(carrier.numerator, s)

    return winding_number(func, region, frequency=float(q.max_delay))


def _grown(region: Rectangle, margin: float = 0.5) -> Rectangle:
    # The left edge stays put so that no left-half-plane root enters
    return Rectangle(region.re_min, region.re_max + margin, region.im_min - margin, region.im_max + margin)


def outer_winding(fp: FactoredPlant) -> Dict[str, int]:
    """
    Winding numbers of the two analytic halves of N_o over the rectangles in which all C+ roots were
    located; both are 0 for an outer N_o.
    """
    numerator = fp.numerator_factors
    top = numerator.shifted if not numerator.conjugate_form else conjugate(fp.plant.q_n)
    denominator = fp.denominator_factors
    return {
        "numerator": _quotient_winding(top, numerator.carrier, _grown(numerator.search.region)),
        "denominator": _quotient_winding(fp.plant.q_d, denominator.carrier, _grown(denominator.search.region)),
    }
