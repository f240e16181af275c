import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from src.errors import BoundaryRootError, NotFiniteError, RootFindingError
from src.qpoly import (KindTag, QuasiPolynomial, asymptotic_polynomial, classify, conjugate, evaluate,
                       evaluate_derivative, term_scale)
from src.rootfinder.contour import SPLIT_FRACTIONS, Rectangle, count_roots, qpoly_winding_number
from src.rootfinder.polynomial import RootSet, cluster_roots, polynomial_roots
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

# Left edge of the right-half-plane search box, slightly inside C_-
LEFT_MARGIN = 1e-6

# Cells smaller than this (relative to max(1, |center|)) hold a single, possibly repeated, root
CELL_RESOLUTION = 1e-7


class Finiteness(str, Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class FinitenessVerdict:
    status: Finiteness
    witness: Tuple[float, ...] = ()
    kind: Optional[KindTag] = None
    reason: str = ""

    @property
    def is_finite(self) -> bool:
        return self.status is Finiteness.FINITE


def _asymptotic_magnitudes(q: QuasiPolynomial, tolerances: Tolerances) -> Tuple[float, ...]:
    coefficients = asymptotic_polynomial(q).as_array()
    if len(coefficients) < 2:
        return ()
    return tuple(sorted(polynomial_roots(coefficients, tolerances).magnitudes, reverse=True))


def finiteness_rhp(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FinitenessVerdict:
    """
    Decides whether q has finitely many roots in the closed right half-plane.

    Retarded values always do. A neutral value does iff every root of its asymptotic polynomial lies outside
    the unit circle; magnitudes within the unit-circle band give Indeterminate.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.
        tolerances (Tolerances): Supplies the unit-circle band.

    Returns:
        FinitenessVerdict: The verdict with the asymptotic root magnitudes as witness.
    """
    kind = classify(q)
    if kind is KindTag.RETARDED:
        return FinitenessVerdict(Finiteness.FINITE, (), kind, "retarded")
    if kind is KindTag.ADVANCED:
        return FinitenessVerdict(Finiteness.INFINITE, (), kind, "first term is not of maximal degree")

    band = tolerances.unit_circle_band
    magnitudes = _asymptotic_magnitudes(q, tolerances)
    if all(m > 1 + band for m in magnitudes):
        return FinitenessVerdict(Finiteness.FINITE, magnitudes, kind, "asymptotic roots outside the unit circle")
    if any(m < 1 - band for m in magnitudes):
        return FinitenessVerdict(Finiteness.INFINITE, magnitudes, kind, "asymptotic root inside the unit circle")
    logger.warning("asymptotic root on the unit circle for %s, root chains may approach the imaginary axis", q)
    return FinitenessVerdict(Finiteness.INDETERMINATE, magnitudes, kind, "asymptotic root on the unit circle")


def finiteness_rhp_conjugate(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FinitenessVerdict:
    """
    Decides whether the conjugate of q has finitely many roots in the closed right half-plane, from the
    asymptotic polynomial of q itself: every root must lie inside the unit circle.

    Args:
        q (QuasiPolynomial): The quasi-polynomial (not its conjugate).
        tolerances (Tolerances): Supplies the unit-circle band.

    Returns:
        FinitenessVerdict: Verdict about the conjugate; the witness holds the magnitudes for q.
    """
    if len(q.terms) == 1:
        return FinitenessVerdict(Finiteness.FINITE, (), classify(q), "conjugate is a polynomial")
    kind = classify(q)
    if kind is KindTag.ADVANCED:
        return finiteness_rhp(conjugate(q), tolerances)
    if q.terms[-1].degree < max(q.degrees):
        return FinitenessVerdict(Finiteness.INFINITE, (), kind, "last term is of lower degree")

    band = tolerances.unit_circle_band
    magnitudes = _asymptotic_magnitudes(q, tolerances)
    if all(m < 1 - band for m in magnitudes):
        return FinitenessVerdict(Finiteness.FINITE, magnitudes, kind, "asymptotic roots inside the unit circle")
    if any(m > 1 + band for m in magnitudes):
        return FinitenessVerdict(Finiteness.INFINITE, magnitudes, kind, "asymptotic root outside the unit circle")
    logger.warning("asymptotic root on the unit circle for the conjugate of %s", q)
    return FinitenessVerdict(Finiteness.INDETERMINATE, magnitudes, kind, "asymptotic root on the unit circle")


def right_bound(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Abscissa R >= 1 beyond which the first term dominates the rest, so q has no roots with Re s >= R.

    Starting from 1 the candidate doubles until
    |a_1| - (||q_1||_1 - |a_1|)/R > sum_{i>=2} ||q_i||_1 e^{-(h_i - h_1) R}.

    Raises:
        ValueError: When the first term is not of maximal degree.
        RootFindingError: When the bound exceeds the maximum search extent.
    """
    if classify(q) is KindTag.ADVANCED:
        raise ValueError("no right bound exists when a later term outgrows the first")
    first = q.terms[0]
    leading = abs(first.leading)
    lower_mass = float(np.abs(first.coefficients).sum()) - leading
    masses = [(float(np.abs(term.coefficients).sum()), float(term.delay - first.delay)) for term in q.terms[1:]]
    bound = 1.0
    while bound <= tolerances.max_search_extent:
        tail = sum(mass * math.exp(-gap * bound) for mass, gap in masses)
        if leading - lower_mass / bound > tail:
            return bound
        bound *= 2
    raise RootFindingError(f"no right bound below {tolerances.max_search_extent} for {q}")


def retarded_radius(q: QuasiPolynomial) -> float:
    """
    Modulus bound for all closed right-half-plane roots of a retarded q:
    max(1, (||q_1||_1 - |a_1| + sum_{i>=2} ||q_i||_1) / |a_1|).
    """
    if classify(q) is not KindTag.RETARDED:
        raise ValueError("retarded_radius needs a retarded quasi-polynomial")
    first = q.terms[0]
    leading = abs(first.leading)
    mass = float(np.abs(first.coefficients).sum()) - leading
    mass += sum(float(np.abs(term.coefficients).sum()) for term in q.terms[1:])
    return max(1.0, mass / leading)


def chain_abscissae(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> List[float]:
    """
    Real parts -N ln|r| that the neutral root chains approach, one per distinct asymptotic root magnitude.
    Retarded chains run off to -infinity and give an empty list.
    """
    if classify(q) is not KindTag.NEUTRAL:
        return []
    base = asymptotic_polynomial(q).base
    magnitudes = sorted({round(m, 12) for m in _asymptotic_magnitudes(q, tolerances)})
    return sorted({round(-base * math.log(m), 12) for m in magnitudes}, reverse=True)


@dataclass(frozen=True)
class RootSearch:
    """
    Outcome of a right-half-plane root search: the roots, the rectangle they were counted in, and whether the
    rectangle was closed by the growth heuristic rather than a certified bound.
    """
    roots: RootSet
    region: Rectangle
    verdict: FinitenessVerdict
    heuristic: bool
    counted: int = field(default=0)


def _newton(q: QuasiPolynomial, start: complex, multiplicity: int, tolerances: Tolerances,
            max_iterations: int = 60) -> Tuple[complex, float]:
    z = complex(start)
    residual = math.inf
    for _ in range(max_iterations):
        value = complex(evaluate(q, z))
        scale = float(term_scale(q, z))
        residual = abs(value) / scale if scale > 0 else abs(value)
        if residual <= tolerances.root_residual:
            break
        slope = complex(evaluate_derivative(q, z))
        if slope == 0 or not np.isfinite(slope):
            break
        step = multiplicity * value / slope
        z -= step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            value = complex(evaluate(q, z))
            residual = abs(value) / float(term_scale(q, z))
            break
    return z, residual


def _split_counts(q: QuasiPolynomial, cell: Rectangle, count: int):
    for fraction in SPLIT_FRACTIONS:
        first, second = cell.split(fraction)
        try:
            first_count = qpoly_winding_number(q, first)
            second_count = qpoly_winding_number(q, second)
        except BoundaryRootError:
            continue
        if first_count + second_count == count:
            return [(first, first_count), (second, second_count)]
        logger.debug("split counts %d + %d disagree with %d, trying another cut", first_count, second_count, count)
    raise RootFindingError(f"could not subdivide {cell} cleanly")


def _isolate(q: QuasiPolynomial, region: Rectangle, count: int, tolerances: Tolerances) -> List[Tuple[complex, int]]:
    found = []
    pending = [(region, count)]
    while pending:
        cell, cell_count = pending.pop()
        if cell_count == 0:
            continue
        small = max(cell.width, cell.height) <= CELL_RESOLUTION * max(1.0, abs(cell.center))
        if cell_count == 1 or small:
            root, residual = _newton(q, cell.center, cell_count, tolerances)
            inside = cell.contains(root, margin=0.1 * max(cell.width, cell.height))
            if residual <= tolerances.root_acceptance and inside:
                logger.debug("root %s (multiplicity %d) residual %.2e", root, cell_count, residual)
                found.append((root, cell_count))
                continue
            if small:
                raise RootFindingError(f"Newton refinement did not converge near {cell.center}")
        pending.extend(_split_counts(q, cell, cell_count))
    return found


def _symmetrize(pairs: List[Tuple[complex, int]], tolerance: float = 1e-9) -> List[Tuple[complex, int]]:
    real, upper, lower = [], [], []
    for root, m in pairs:
        if abs(root.imag) <= tolerance * max(1.0, abs(root)):
            real.append((complex(root.real, 0.0), m))
        elif root.imag > 0:
            upper.append((root, m))
        else:
            lower.append((root, m))
    if sorted(m for _, m in upper) != sorted(m for _, m in lower):
        logger.warning("root set is not conjugate-symmetric, keeping both halves as computed")
        return real + upper + lower
    return real + upper + [(root.conjugate(), m) for root, m in upper]


def search_rhp_roots(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> RootSearch:
    """
    Locates every root of q with Re s >= 0.

    Retarded values are searched in a certified box (right bound times modulus bound). Neutral values start
    from max(10, 2R) in the imaginary direction and double the box until two consecutive growths add no
    roots; that closing step is a heuristic and is flagged on the result. Each root is isolated by recursive
    subdivision and refined with Newton's method.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.
        tolerances (Tolerances): Residual targets and search limits.

    Returns:
        RootSearch: Roots sorted by (real desc, imag asc), the search rectangle and the heuristic flag.

    Raises:
        NotFiniteError: If the finiteness verdict is not Finite.
        RootFindingError: If refinement or the search does not converge.
    """
    verdict = finiteness_rhp(q, tolerances)
    if not verdict.is_finite:
        raise NotFiniteError(f"{q} does not have finitely many roots in C+ ({verdict.status.value})", verdict)

    if len(q.terms) == 1:
        region = Rectangle(-LEFT_MARGIN, 1.0, -1.0, 1.0)
        if q.terms[0].degree == 0:
            return RootSearch(RootSet(), region, verdict, heuristic=False)
        everything = polynomial_roots(q.terms[0].coefficients, tolerances)
        kept = [(root, m) for root, m in everything if root.real >= -tolerances.axis_guard]
        roots = RootSet.from_pairs(kept)
        if roots.roots:
            reach = max(abs(root) for root in roots.roots) + 1.0
            region = Rectangle(-LEFT_MARGIN, reach, -reach, reach)
        return RootSearch(roots, region, verdict, heuristic=False, counted=roots.total)

    bound = right_bound(q, tolerances)
    heuristic = False
    if verdict.kind is KindTag.RETARDED:
        radius = retarded_radius(q)
        if radius > tolerances.max_search_extent:
            logger.warning("modulus bound %.3g capped at %.3g", radius, tolerances.max_search_extent)
            radius = tolerances.max_search_extent
            heuristic = True
        reach = radius * (1 + 1e-3) + 1e-3
        region = Rectangle(-LEFT_MARGIN, min(bound, reach), -reach, reach)
        count = count_roots(q, region, tolerances)
    else:
        extent = max(10.0, 2 * bound)
        region = Rectangle(-LEFT_MARGIN, bound, -extent, extent)
        count = count_roots(q, region, tolerances)
        stable = 0
        while stable < 2:
            extent *= 2
            if extent > tolerances.max_search_extent:
                raise RootFindingError(f"root count of {q} did not stabilise below {tolerances.max_search_extent}")
            grown = Rectangle(-LEFT_MARGIN, bound, -extent, extent)
            grown_count = count_roots(q, grown, tolerances)
            stable = stable + 1 if grown_count == count else 0
            logger.debug("search box +-%.3g holds %d roots", extent, grown_count)
            region, count = grown, grown_count
        heuristic = True
        logger.warning("root search for %s closed by the growth heuristic at +-%.3g", q, extent)

    pairs = _isolate(q, region, count, tolerances) if count else []
    pairs = cluster_roots([root for root, m in pairs for _ in range(m)], CELL_RESOLUTION * 10)
    pairs = _symmetrize(pairs)
    if sum(m for _, m in pairs) != count:
        raise RootFindingError(f"isolated {sum(m for _, m in pairs)} roots but counted {count}")
    kept = [(root, m) for root, m in pairs if root.real >= -tolerances.axis_guard]
    return RootSearch(RootSet.from_pairs(kept), region, verdict, heuristic, counted=count)


def rhp_roots(q: QuasiPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> RootSet:
    """
    Roots of q in the closed right half-plane (see search_rhp_roots).
    """
    return search_rhp_roots(q, tolerances).roots


def roots_in_region(q: QuasiPolynomial, region: Rectangle, tolerances: Tolerances = DEFAULT_TOLERANCES) -> RootSet:
    """
    Every root of q inside an arbitrary rectangle, left half-plane included. No finiteness precondition.

    Raises:
        RootFindingError: If refinement does not converge.
    """
    count = count_roots(q, region, tolerances)
    pairs = _isolate(q, region, count, tolerances) if count else []
    pairs = cluster_roots([root for root, m in pairs for _ in range(m)], CELL_RESOLUTION * 10)
    return RootSet.from_pairs(pairs)
