from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # Unit-circle band for asymptotic-polynomial magnitudes
    unit_circle_band: float = 1e-6

    # Relative residual for a point to count as a zero of a delay sum
    zero_residual: float = 1e-6

    # Distance to a pole under which evaluation is refused
    pole_guard: float = 1e-8

    # Roots closer than this to the imaginary axis abort factorization
    axis_guard: float = 1e-8

    # Newton target and acceptance residuals for quasi-polynomial roots
    root_residual: float = 1e-10
    root_acceptance: float = 1e-8

    # FIR certification
    fir_tolerance: float = 1e-8
    fixture_tolerance: float = 1e-2
    fixture_horizon: float = 3.0
    certification_samples: int = 400

    # Root search
    max_search_extent: float = 1e4
    max_boundary_perturbations: int = 6

    # Polynomial conditioning
    degree_cap: int = 64

    def with_overrides(self, **overrides) -> "Tolerances":
        """
        Returns a copy with the given fields replaced, ignoring None values.
        """
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})


DEFAULT_TOLERANCES = Tolerances()
