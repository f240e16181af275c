class TimeDelayError(Exception):
    """Base class for every error raised by the package."""


class QuasiPolynomialSyntaxError(TimeDelayError, ValueError):
    pass


class RootFindingError(TimeDelayError, RuntimeError):
    pass


class BoundaryRootError(RootFindingError):
    """A root sits on (or too close to) the contour of a counting rectangle."""


class NotFiniteError(TimeDelayError, ValueError):
    """The quasi-polynomial does not have finitely many roots in the closed right half-plane."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ImaginaryAxisRootError(TimeDelayError, ValueError):
    pass


class PoleEvaluationError(TimeDelayError, ZeroDivisionError):
    pass


class PartialFractionError(TimeDelayError, ValueError):
    pass


class RealizabilityError(TimeDelayError, ValueError):
    pass


class NotAdmissibleError(TimeDelayError, ValueError):
    def __init__(self, reason: str):
        super().__init__(f"plant is not admissible: {reason}")
        self.reason = reason


class FirCertificationError(TimeDelayError, RuntimeError):
    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class InterpolationError(FirCertificationError):
    """Synthesis data does not cancel every C+ zero of the rational carrier."""


class GammaComputationError(TimeDelayError, NotImplementedError):
    pass


class JobFileError(TimeDelayError, ValueError):
    pass


class SynthesisDataError(TimeDelayError, ValueError):
    """Weights or synthesis data outside their admissible range."""
