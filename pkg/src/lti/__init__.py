from src.lti.delay_sum import DelaySum, eval_delaysum
from src.lti.expression import PureDelay, QuasiPolynomialRatio, RatioExpression, eval_expr
from src.lti.rational import ONE, ZERO, RationalFunction, eval_rational
from src.lti.residues import (ResidueTable, impulse_response, laurent_coefficients, partial_fraction_split,
                              pole_order, residue_table)
from src.lti.responses import export_csv, frequency_response, impulse_response_frame
