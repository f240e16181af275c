from typing import List, Optional

from pydantic import BaseModel

from src.lti import DelaySum, RationalFunction
from src.qpoly import QuasiPolynomial
from src.rootfinder import RootSet


def significant(value: float, digits: int = 6) -> float:
    return float(f"{value:.{digits}g}")


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, value: complex, digits: int = 6) -> "ComplexValue":
        return cls(re=significant(value.real, digits), im=significant(value.imag, digits))


class RootSetDocument(BaseModel):
    roots: List[ComplexValue]
    multiplicities: List[int]

    @classmethod
    def of(cls, roots: RootSet, digits: int = 6) -> "RootSetDocument":
        return cls(roots=[ComplexValue.of(r, digits) for r in roots.roots], multiplicities=list(roots.multiplicities))


class RationalDocument(BaseModel):
    numerator: List[float]
    denominator: List[float]

    @classmethod
    def of(cls, r: RationalFunction, digits: int = 6) -> "RationalDocument":
        return cls(numerator=[significant(c, digits) for c in r.numerator],
                   denominator=[significant(c, digits) for c in r.denominator])


class DelayTermDocument(BaseModel):
    delay: str
    numerator: List[float]
    denominator: List[float] = [1.0]


class DelaySumDocument(BaseModel):
    terms: List[DelayTermDocument]

    @classmethod
    def of(cls, g: DelaySum, digits: int = 6) -> "DelaySumDocument":
        return cls(terms=[
            DelayTermDocument(delay=str(delay), numerator=[significant(c, digits) for c in r.numerator],
                              denominator=[significant(c, digits) for c in r.denominator])
            for r, delay in g.terms
        ])

    @classmethod
    def of_quasi_polynomial(cls, q: QuasiPolynomial, digits: int = 6) -> "DelaySumDocument":
        return cls(terms=[
            DelayTermDocument(delay=str(term.delay), numerator=[significant(c, digits) for c in term.coefficients])
            for term in q.terms
        ])


class FirCertificationDocument(BaseModel):
    support: str
    horizon: float
    tolerance: float
    samples: int
    peak: float
    max_tail: float
    relative_tail: float
    tail_coefficients: float
    passed: bool
    growth_rate: Optional[float] = None
