from src.factorization.inner_outer import (InnerRational, QuasiPolynomialFactors, blaschke, conjugate_factors,
                                           direct_factors, factor_qpoly_conjugate, factor_qpoly_direct)
from src.factorization.plant import (FactoredPlant, PlantCase, PlantClassification, PlantDescription, check_coprime,
                                     classify_plant, factor_plant, inner_deviation, outer_winding, plant_from_strings,
                                     reconstruction_residual, sample_points)
from src.factorization.report import (FactorizationDocument, factorization_document, factorization_report,
                                      report_to_text)
