from typing import Dict, Optional

from pydantic import BaseModel

from src.controller.assembly import ControllerForm
from src.documents import DelaySumDocument, FirCertificationDocument, RationalDocument, significant


class FirBlockDocument(BaseModel):
    transfer_function: DelaySumDocument
    support_end: str
    certification: Optional[FirCertificationDocument] = None


class ControllerDocument(BaseModel):
    case: str
    gamma_opt: float
    theta_n: RationalDocument
    theta_d: RationalDocument
    h_n: DelaySumDocument
    f_n: FirBlockDocument
    h_d: DelaySumDocument
    f_d: FirBlockDocument
    assembly_residual: float


def _block_document(block) -> FirBlockDocument:
    return FirBlockDocument(
        transfer_function=DelaySumDocument.of(block.delay_sum),
        support_end=str(block.support_end),
        certification=None if block.certification is None else block.certification.to_document(),
    )


def controller_report(form: ControllerForm) -> Dict[str, object]:
    """
    Summarizes an assembled controller C = (H_n + F_n)/(H_d + F_d).

    Args:
        form (ControllerForm): The controller.

    Returns:
        dict: A dictionary with human-readable keys.
    """
    return {
        "Case": form.case.value,
        "gamma_opt": f"{form.gamma_opt:g}",
        "theta_n": form.theta.theta_n.to_pretty(),
        "theta_d": form.theta.theta_d.to_pretty(),
        "H_n": form.h_n.to_pretty(),
        "F_n": form.f_n.delay_sum.to_pretty(),
        "F_n certified": form.f_n.certified,
        "H_d": form.h_d.to_pretty(),
        "F_d": form.f_d.delay_sum.to_pretty(),
        "F_d certified": form.f_d.certified,
        "Assembly residual": form.assembly_residual,
    }


def controller_document(form: ControllerForm) -> ControllerDocument:
    return ControllerDocument(
        case=form.case.value,
        gamma_opt=form.gamma_opt,
        theta_n=RationalDocument.of(form.theta.theta_n),
        theta_d=RationalDocument.of(form.theta.theta_d),
        h_n=DelaySumDocument.of(form.h_n),
        f_n=_block_document(form.f_n),
        h_d=DelaySumDocument.of(form.h_d),
        f_d=_block_document(form.f_d),
        assembly_residual=significant(form.assembly_residual, 3),
    )
