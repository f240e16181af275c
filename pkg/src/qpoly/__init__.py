from src.qpoly.asymptotics import (AsymptoticPolynomial, KindTag, asymptotic_polynomial, classify, conjugate,
                                   extract_common_delay)
from src.qpoly.quasi_polynomial import (QuasiPolynomial, RationalDelay, Term, as_delay, derivative, evaluate,
                                        evaluate_derivative, evaluate_terms, parse, serialize, term_scale, to_pretty)
