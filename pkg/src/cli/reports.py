from typing import Dict, List, Optional

from pydantic import BaseModel

from src.documents import DelaySumDocument, FirCertificationDocument, RootSetDocument, significant
from src.lti import DelaySum, RationalFunction
from src.phi import CancellationSet, FirBlock, decomposition_residual
from src.qpoly import QuasiPolynomial, asymptotic_polynomial, classify, conjugate, to_pretty
from src.rootfinder import (FinitenessVerdict, RootSearch, chain_abscissae, finiteness_rhp, finiteness_rhp_conjugate,
                            search_rhp_roots)
from src.tolerances import DEFAULT_TOLERANCES, Tolerances
from src.utils import format_complex


class AnalysisDocument(BaseModel):
    quasi_polynomial: str
    kind: str
    asymptotic_polynomial: str
    magnitudes: List[float]
    chain_abscissae: List[float]
    finiteness: str
    roots: Optional[RootSetDocument] = None
    heuristic: Optional[bool] = None
    conjugate_finiteness: str
    conjugate_roots: Optional[RootSetDocument] = None


class PhiDocument(BaseModel):
    h: DelaySumDocument
    f: DelaySumDocument
    common_zeros: RootSetDocument
    reconstruction_residual: float
    certification: Optional[FirCertificationDocument] = None


def _magnitudes(verdict: FinitenessVerdict) -> str:
    return ", ".join(f"{m:.4f}" for m in verdict.witness) if verdict.witness else "none"


def _search(q: QuasiPolynomial, verdict: FinitenessVerdict, tolerances: Tolerances) -> Optional[RootSearch]:
    if not verdict.is_finite:
        return None
    return search_rhp_roots(q, tolerances)


def analyze(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """
    Classification, asymptotic data, finiteness verdicts and C+ roots of q and of its conjugate.

    Returns:
        tuple: (report dict with human-readable keys, AnalysisDocument).
    """
    verdict = finiteness_rhp(q, tolerances)
    conjugate_verdict = finiteness_rhp_conjugate(q, tolerances)
    search = _search(q, verdict, tolerances)
    conjugate_search = _search(conjugate(q), conjugate_verdict, tolerances)
    asymptotic = asymptotic_polynomial(q)
    abscissae = chain_abscissae(q, tolerances)

    report = {
        "Quasi-polynomial": to_pretty(q),
        "Kind": classify(q).value,
        "Asymptotic polynomial": f"{asymptotic.to_pretty()} (z = e^{{-s/{asymptotic.base}}})",
        "Asymptotic root magnitudes": _magnitudes(verdict),
        "Chain abscissae": ", ".join(f"{a:.4f}" for a in abscissae) if abscissae else "none",
        "Finiteness": verdict.status.value,
    }
    if search is not None:
        report["C+ roots"] = f"{search.roots.total}: " + (
            ", ".join(format_complex(r) for r in search.roots.expanded()) or "none")
        report["Root search heuristic"] = "yes" if search.heuristic else "no"
    report["Conjugate finiteness"] = conjugate_verdict.status.value
    if conjugate_search is not None:
        report["Conjugate C+ roots"] = f"{conjugate_search.roots.total}: " + (
            ", ".join(format_complex(r) for r in conjugate_search.roots.expanded()) or "none")

    document = AnalysisDocument(
        quasi_polynomial=to_pretty(q),
        kind=classify(q).value,
        asymptotic_polynomial=asymptotic.to_pretty(),
        magnitudes=[significant(m) for m in verdict.witness],
        chain_abscissae=[significant(a) for a in abscissae],
        finiteness=verdict.status.value,
        roots=None if search is None else RootSetDocument.of(search.roots),
        heuristic=None if search is None else search.heuristic,
        conjugate_finiteness=conjugate_verdict.status.value,
        conjugate_roots=None if conjugate_search is None else RootSetDocument.of(conjugate_search.roots),
    )
    return report, document


def phi_report(g: DelaySum, g0: RationalFunction, cancellations: CancellationSet, h: DelaySum, f: FirBlock):
    """
    The decomposition G/G0 = H + F with its reconstruction residual and FIR certification.

    Returns:
        tuple: (report dict with human-readable keys, PhiDocument).
    """
    residual = decomposition_residual(g, g0, h, f)
    report: Dict[str, object] = {
        "G": g.to_pretty(),
        "G0": g0.to_pretty(),
        "Common C+ zeros": [format_complex(z) for z in cancellations.complete.expanded()],
        "H": h.to_pretty(),
        "F": f.delay_sum.to_pretty(),
        "Reconstruction residual": residual,
    }
    document = PhiDocument(
        h=DelaySumDocument.of(h),
        f=DelaySumDocument.of(f.delay_sum),
        common_zeros=RootSetDocument.of(cancellations.complete),
        reconstruction_residual=significant(residual, 3),
        certification=None if f.certification is None else f.certification.to_document(),
    )
    return report, document
