import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from src.errors import BoundaryRootError, RootFindingError
from src.qpoly import QuasiPolynomial, evaluate, term_scale
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

# Relative modulus under which a boundary sample is treated as a root on the contour
BOUNDARY_GUARD = 1e-11

# Split positions tried in turn when a cut line passes through a root
SPLIT_FRACTIONS = (0.5137, 0.4729, 0.5581, 0.4213, 0.6047, 0.3791)


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex((self.re_min + self.re_max) / 2, (self.im_min + self.im_max) / 2)

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    def corners(self) -> Tuple[complex, complex, complex, complex]:
        """Counter-clockwise from the lower-left corner."""
        return (complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                complex(self.re_max, self.im_max), complex(self.re_min, self.im_max))

    def contains(self, point: complex, margin: float = 0.0) -> bool:
        return (self.re_min - margin <= point.real <= self.re_max + margin
                and self.im_min - margin <= point.imag <= self.im_max + margin)

    def expanded(self, margin: float) -> "Rectangle":
        return Rectangle(self.re_min - margin, self.re_max + margin, self.im_min - margin, self.im_max + margin)

    def split(self, fraction: float = 0.5) -> Tuple["Rectangle", "Rectangle"]:
        """Cuts across the longer side at the given fraction."""
        if self.width >= self.height:
            cut = self.re_min + fraction * self.width
            return (Rectangle(self.re_min, cut, self.im_min, self.im_max),
                    Rectangle(cut, self.re_max, self.im_min, self.im_max))
        cut = self.im_min + fraction * self.height
        return (Rectangle(self.re_min, self.re_max, self.im_min, cut),
                Rectangle(self.re_min, self.re_max, cut, self.im_max))


def _edge_phase(func: Callable, start: complex, end: complex, samples: int,
                scale: Optional[Callable]) -> float:
    """
    Accumulated change of arg func along the segment, refined until adjacent samples differ by less than pi/2.
    """
    ts = np.linspace(0.0, 1.0, samples + 1)
    values = np.asarray(func(start + ts * (end - start)), dtype=complex)
    for _ in range(60):
        points = start + ts * (end - start)
        if not np.all(np.isfinite(values)):
            raise RootFindingError("non-finite values on the counting contour")
        reference = scale(points) if scale is not None else np.full(len(points), np.abs(values).max())
        if np.any(np.abs(values) <= BOUNDARY_GUARD * reference):
            raise BoundaryRootError(f"root on the contour segment {start} -> {end}")
        steps = np.angle(values[1:] / values[:-1])
        coarse = np.flatnonzero(np.abs(steps) >= np.pi / 2)
        if coarse.size == 0:
            return float(steps.sum())
        if np.min(ts[coarse + 1] - ts[coarse]) < 1e-13:
            raise BoundaryRootError(f"phase does not resolve on the contour segment {start} -> {end}")
        middles = (ts[coarse] + ts[coarse + 1]) / 2
        new_values = np.asarray(func(start + middles * (end - start)), dtype=complex)
        ts = np.insert(ts, coarse + 1, middles)
        values = np.insert(values, coarse + 1, new_values)
    raise BoundaryRootError(f"phase refinement did not settle on {start} -> {end}")


def winding_number(func: Callable, region: Rectangle, scale: Optional[Callable] = None,
                   frequency: float = 1.0) -> int:
    """
    Number of zeros of an analytic function inside a rectangle (argument principle).

    Args:
        func (Callable): Vectorized function of complex points.
        region (Rectangle): Counting region; its boundary must be free of zeros.
        scale (Callable, optional): Magnitude scale at points for the on-contour test.
        frequency (float): Oscillation rate of func along the imaginary direction (e.g. the largest delay),
            used to size the initial sampling.

    Returns:
        int: The winding number of func along the counter-clockwise boundary.

    Raises:
        BoundaryRootError: When a zero lies on (or too close to) the boundary.
    """
    corners = region.corners()
    total = 0.0
    for index in range(4):
        start, end = corners[index], corners[(index + 1) % 4]
        length = abs(end - start)
        samples = max(64, int(math.ceil(length * (frequency + 1.0) * 8)))
        total += _edge_phase(func, start, end, samples, scale)
    turns = total / (2 * np.pi)
    count = int(round(turns))
    if abs(turns - count) > 0.25:
        raise BoundaryRootError(f"winding number {turns:.3f} is not close to an integer")
    return count


def qpoly_winding_number(q: QuasiPolynomial, region: Rectangle) -> int:
    return winding_number(lambda s: evaluate(q, s), region, scale=lambda s: term_scale(q, s),
                          frequency=float(q.max_delay))


def count_roots(q: QuasiPolynomial, region: Rectangle, tolerances: Tolerances = DEFAULT_TOLERANCES) -> int:
    """
    Counts the roots of q inside a rectangle, with multiplicity.

    When a root sits on the boundary the rectangle is pushed outward by a small, growing margin and the count
    is retried, up to ``tolerances.max_boundary_perturbations`` times.

    Args:
        q (QuasiPolynomial): The quasi-polynomial.
        region (Rectangle): The counting region.
        tolerances (Tolerances): Perturbation budget.

    Returns:
        int: Number of roots inside the (possibly perturbed) region.

    Raises:
        BoundaryRootError: When every perturbation still meets a root on the contour.
    """
    current = region
    for attempt in range(tolerances.max_boundary_perturbations + 1):
        try:
            return qpoly_winding_number(q, current)
        except BoundaryRootError as error:
            margin = 1e-3 * max(1.0, region.diameter) * (1 + 0.618 * attempt)
            logger.warning("%s; retrying with the region enlarged by %.3g", error, margin)
            current = region.expanded(margin)
    raise BoundaryRootError(f"boundary roots unresolved after {tolerances.max_boundary_perturbations} perturbations")
