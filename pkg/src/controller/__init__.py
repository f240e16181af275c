from src.controller.assembly import (ControllerForm, assemble, assemble_c1, assemble_c2, assembly_points,
                                     assembly_residual, evaluate_unsplit)
from src.controller.report import ControllerDocument, FirBlockDocument, controller_document, controller_report
from src.controller.synthesis import (REFERENCE_DESIGNS, SynthesisData, ThetaSplit, WeightPair, compute_gamma_opt,
                                      split_theta)
from src.controller.verification import FixtureReport, verify_fixture
