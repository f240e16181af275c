import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.lti import DelaySum
from src.phi import FirCertification, certify_fir
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FixtureReport:
    """Certification records of printed FIR terms, keyed by block name ("F_n", "F_d")."""
    certifications: Dict[str, FirCertification] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.certifications.values())

    def to_text(self) -> str:
        sections = []
        for name, record in self.certifications.items():
            sections.append(f"[{name}]\n{record.to_text()}")
        sections.append(f"fixture: {'pass' if self.passed else 'fail'}")
        return "\n\n".join(sections)


def verify_fixture(f_n: Optional[DelaySum] = None, f_d: Optional[DelaySum] = None, fn_support=None,
                   fd_support=None, tolerance: Optional[float] = None, horizon: Optional[float] = None,
                   tolerances: Tolerances = DEFAULT_TOLERANCES) -> FixtureReport:
    """
    Certifies the FIR property of printed controller terms.

    Printed coefficients carry four significant digits, so the defaults are the loose fixture tolerance and a fixed
    horizon rather than the machine-precision settings of the decomposition.

    Args:
        f_n (DelaySum, optional): Printed numerator FIR term.
        f_d (DelaySum, optional): Printed denominator FIR term.
        fn_support: Expected support end of F_n (its largest delay by default).
        fd_support: Expected support end of F_d (its largest delay by default).
        tolerance (float, optional): Allowed relative tail (``tolerances.fixture_tolerance`` by default).
        horizon (float, optional): Tail length (``tolerances.fixture_horizon`` by default).
        tolerances (Tolerances): Default thresholds.

    Returns:
        FixtureReport: One record per given block; failures are reported, never raised.
    """
    tolerance = tolerances.fixture_tolerance if tolerance is None else tolerance
    horizon = tolerances.fixture_horizon if horizon is None else horizon
    records = {}
    for name, block, support in (("F_n", f_n, fn_support), ("F_d", f_d, fd_support)):
        if block is None:
            continue
        records[name] = certify_fir(block, support, tolerance, horizon, tolerances.certification_samples)
        logger.info("%s fixture: %s", name, "pass" if records[name].passed else "fail")
    return FixtureReport(records)
