import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from src.tolerances import DEFAULT_TOLERANCES, Tolerances
from src.utils import poly_derivative, poly_scale, trim_leading_zeros

logger = logging.getLogger(__name__)


def root_sort_key(root: complex) -> Tuple[float, float]:
    # Real part descending, imaginary part ascending
    return -round(root.real, 12), round(root.imag, 12)


@dataclass(frozen=True)
class RootSet:
    """
    Distinct roots with multiplicities, sorted by (real part desc, imaginary part asc).
    """
    roots: Tuple[complex, ...] = ()
    multiplicities: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.roots) != len(self.multiplicities):
            raise ValueError("every root needs a multiplicity")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[complex, int]]) -> "RootSet":
        ordered = sorted(((complex(root), int(m)) for root, m in pairs), key=lambda pair: root_sort_key(pair[0]))
        return cls(tuple(root for root, _ in ordered), tuple(m for _, m in ordered))

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "RootSet":
        return cls.from_pairs([(root, 1) for root in roots])

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(zip(self.roots, self.multiplicities))

    @property
    def total(self) -> int:
        return int(sum(self.multiplicities))

    @property
    def magnitudes(self) -> List[float]:
        return [abs(root) for root in self.expanded()]

    def expanded(self) -> List[complex]:
        """Roots repeated according to multiplicity."""
        return [root for root, m in zip(self.roots, self.multiplicities) for _ in range(m)]

    def is_conjugate_symmetric(self, atol: float = 1e-9) -> bool:
        for root, m in self:
            partner = [other_m for other, other_m in self if abs(other - root.conjugate()) <= atol * max(1.0, abs(root))]
            if m not in partner:
                return False
        return True

    def in_open_right_half_plane(self) -> "RootSet":
        return RootSet.from_pairs([(root, m) for root, m in self if root.real > 0])


def cluster_roots(roots: Sequence[complex], tolerance: float = 1e-6) -> List[Tuple[complex, int]]:
    """
    Groups numerically repeated roots. Members within ``tolerance`` (relative to max(1, |root|)) of a cluster
    center join it; the center is the mean of its members.
    """
    clusters: List[List[complex]] = []
    for root in sorted(roots, key=lambda r: (r.real, r.imag)):
        for members in clusters:
            center = np.mean(members)
            if abs(root - center) <= tolerance * max(1.0, abs(center)):
                members.append(root)
                break
        else:
            clusters.append([root])
    return [(complex(np.mean(members)), len(members)) for members in clusters]


def _polish(coefficients: np.ndarray, root: complex) -> complex:
    value = np.polyval(coefficients, root)
    slope = np.polyval(poly_derivative(coefficients), root)
    if slope == 0 or not np.isfinite(slope):
        return root
    candidate = root - value / slope
    if abs(np.polyval(coefficients, candidate)) < abs(value):
        return complex(candidate)
    return root


def polynomial_roots(coefficients: Sequence[float], tolerances: Tolerances = DEFAULT_TOLERANCES,
                     cluster_tolerance: float = 1e-6) -> RootSet:
    """
    All complex roots of a real polynomial.

    Companion-matrix eigenvalues (np.roots) get one Newton polish; the upper half is mirrored so the result is
    exactly conjugate-symmetric, and numerically repeated roots are merged into multiplicities.

    Args:
        coefficients (Sequence[float]): Coefficients, highest degree first.
        tolerances (Tolerances): Degree cap for the conditioning warning.
        cluster_tolerance (float): Relative distance under which roots are merged.

    Returns:
        RootSet: Conjugate-paired roots.

    Raises:
        ValueError: For the zero polynomial or a constant.
    """
    values = trim_leading_zeros(np.asarray(coefficients, dtype=float))
    if values[0] == 0:
        raise ValueError("zero polynomial has no root set")
    degree = len(values) - 1
    if degree == 0:
        raise ValueError("a constant polynomial has no roots")
    if degree > tolerances.degree_cap:
        logger.warning("polynomial of degree %d exceeds the degree cap %d, roots may be ill-conditioned",
                       degree, tolerances.degree_cap)

    raw = np.roots(values)
    near_real = np.abs(raw.imag) <= 1e-9 * np.maximum(1.0, np.abs(raw))
    real_roots = [complex(_polish(values, complex(r.real, 0.0)).real, 0.0) for r in raw[near_real]]
    upper = [_polish(values, complex(r)) for r in raw[~near_real & (raw.imag > 0)]]
    lower_count = int(np.count_nonzero(~near_real & (raw.imag < 0)))
    if lower_count == len(upper):
        roots = real_roots + upper + [r.conjugate() for r in upper]
    else:
        logger.debug("companion eigenvalues are not conjugate-paired, keeping them unmirrored")
        roots = real_roots + [_polish(values, complex(r)) for r in raw[~near_real]]

    pairs = cluster_roots(roots, cluster_tolerance)
    # Clusters of conjugate members average to the real axis
    pairs = [(complex(r.real, 0.0) if abs(r.imag) <= cluster_tolerance * max(1.0, abs(r)) else r, m) for r, m in pairs]
    for root, m in pairs:
        residual = abs(np.polyval(values, root)) / max(poly_scale(values, root), np.finfo(float).tiny)
        logger.debug("root %s (multiplicity %d) relative residual %.2e", root, m, residual)
    return RootSet.from_pairs(pairs)
