from typing import Dict, List, Optional

from pydantic import BaseModel

from src.documents import DelaySumDocument, RationalDocument, RootSetDocument, significant
from src.factorization.plant import (FactoredPlant, inner_deviation, outer_winding, reconstruction_residual)
from src.qpoly import conjugate
from src.utils import format_complex


class FactorizationDocument(BaseModel):
    case: str
    reason: str
    numerator_roots: RootSetDocument
    denominator_roots: RootSetDocument
    numerator_search_heuristic: bool
    denominator_search_heuristic: bool
    m_n_blaschke: RationalDocument
    m_n_delay: str
    m_n_all_pass_numerator: Optional[DelaySumDocument] = None
    m_n_all_pass_denominator: Optional[DelaySumDocument] = None
    m_d: RationalDocument
    n_o_numerator: DelaySumDocument
    n_o_denominator: DelaySumDocument
    n_o_rational: RationalDocument
    reconstruction_residual: float
    inner_deviation: Dict[str, float]
    outer_winding: Dict[str, int]
    shared_roots: List[str]


def factorization_report(fp: FactoredPlant) -> Dict[str, object]:
    """
    Summarizes a factored plant together with its invariant checks.

    Args:
        fp (FactoredPlant): The factored plant.

    Returns:
        dict: A dictionary with human-readable keys.
    """
    numerator = fp.numerator_factors
    denominator = fp.denominator_factors
    return {
        "Case": fp.case.value,
        "Reason": fp.classification.reason,
        "Numerator side C+ roots": [format_complex(r) for r in numerator.search.roots.roots],
        "Denominator C+ roots": [format_complex(r) for r in denominator.search.roots.roots],
        "Root search heuristic": numerator.search.heuristic or denominator.search.heuristic,
        "m_n": fp.m_n.to_pretty(),
        "m_d": fp.m_d.to_pretty(),
        "N_o": fp.n_o.to_pretty(),
        "Reconstruction residual": reconstruction_residual(fp),
        "Inner deviation": inner_deviation(fp),
        "Outer winding": outer_winding(fp),
        "Shared C+ roots": [format_complex(r) for r in fp.shared_roots],
    }


def report_to_text(report: Dict[str, object]) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, float):
            value = f"{value:.3e}"
        elif isinstance(value, list):
            value = ", ".join(str(item) for item in value) if value else "none"
        elif isinstance(value, dict):
            value = ", ".join(f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}" for k, v in value.items())
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def factorization_document(fp: FactoredPlant, report: Optional[Dict[str, object]] = None) -> FactorizationDocument:
    report = factorization_report(fp) if report is None else report
    numerator = fp.numerator_factors
    top = conjugate(fp.plant.q_n) if numerator.conjugate_form else numerator.shifted
    return FactorizationDocument(
        case=fp.case.value,
        reason=fp.classification.reason,
        numerator_roots=RootSetDocument.of(numerator.search.roots),
        denominator_roots=RootSetDocument.of(fp.denominator_factors.search.roots),
        numerator_search_heuristic=numerator.search.heuristic,
        denominator_search_heuristic=fp.denominator_factors.search.heuristic,
        m_n_blaschke=RationalDocument.of(numerator.carrier.rational),
        m_n_delay=str(numerator.delay),
        m_n_all_pass_numerator=DelaySumDocument.of_quasi_polynomial(fp.plant.q_n) if numerator.conjugate_form else None,
        m_n_all_pass_denominator=(DelaySumDocument.of_quasi_polynomial(conjugate(fp.plant.q_n))
                                  if numerator.conjugate_form else None),
        m_d=RationalDocument.of(fp.m_d.rational),
        n_o_numerator=DelaySumDocument.of_quasi_polynomial(top),
        n_o_denominator=DelaySumDocument.of_quasi_polynomial(fp.plant.q_d),
        n_o_rational=RationalDocument.of(numerator.carrier.rational.inverse() * fp.m_d.rational),
        reconstruction_residual=significant(report["Reconstruction residual"], 3),
        inner_deviation={k: significant(v, 3) for k, v in report["Inner deviation"].items()},
        outer_winding=report["Outer winding"],
        shared_roots=report["Shared C+ roots"],
    )
