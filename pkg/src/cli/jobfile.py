import configparser
import logging
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from src.controller import SynthesisData, WeightPair
from src.errors import JobFileError
from src.factorization import PlantDescription, plant_from_strings
from src.lti import DelaySum, RationalFunction
from src.qpoly import parse
from src.tolerances import DEFAULT_TOLERANCES, Tolerances

logger = logging.getLogger(__name__)

SECTIONS = ("quasi_polynomial", "plant", "weights", "synthesis", "phi", "fixture", "options")


def parse_coefficients(text: str) -> Tuple[float, ...]:
    """Space or comma separated coefficients, highest power first."""
    tokens = str(text).replace(",", " ").split()
    if not tokens:
        raise JobFileError(f"no coefficients in {text!r}")
    try:
        return tuple(float(token) for token in tokens)
    except ValueError as error:
        raise JobFileError(f"bad coefficient list {text!r}") from error


def parse_rational(text: str) -> RationalFunction:
    """
    Parses "num: c_n ... c_0; den: d_m ... d_0"; the denominator defaults to 1.

    Raises:
        JobFileError: On an unknown part, a missing numerator or a zero denominator.
    """
    parts = {}
    for chunk in str(text).split(";"):
        if not chunk.strip():
            continue
        key, colon, value = chunk.partition(":")
        key = key.strip().lower()
        if key not in ("num", "den") or not colon:
            raise JobFileError(f"rational part {chunk.strip()!r} must start with 'num:' or 'den:'")
        parts[key] = parse_coefficients(value)
    if "num" not in parts:
        raise JobFileError(f"rational {text!r} has no numerator")
    denominator = parts.get("den", (1.0,))
    if not any(denominator):
        raise JobFileError(f"rational {text!r} has a zero denominator")
    return RationalFunction(parts["num"], denominator)


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class QuasiPolynomialSection(Section):
    q: str


class PlantSection(Section):
    numerator: str
    denominator: str

    def to_plant(self) -> PlantDescription:
        return plant_from_strings(self.numerator, self.denominator)


class WeightsSection(Section):
    w1: str
    w2: Optional[str] = None

    def to_weights(self) -> WeightPair:
        try:
            return WeightPair(parse_rational(self.w1), None if self.w2 is None else parse_rational(self.w2))
        except ValueError as error:
            raise JobFileError(str(error)) from error


class SynthesisSection(Section):
    gamma: float
    f: str
    e: str = "num: 1"
    l: str = "num: 1"

    def to_synthesis_data(self) -> SynthesisData:
        try:
            return SynthesisData(self.gamma, parse_rational(self.e), parse_rational(self.f), parse_rational(self.l))
        except ValueError as error:
            raise JobFileError(str(error)) from error


class PhiSection(Section):
    g_num: str
    g0: str
    g_den: str = "1"

    def to_delay_sum(self) -> DelaySum:
        """G = g_num / g_den with g_num a quasi-polynomial and g_den a polynomial."""
        return DelaySum.from_quasi_polynomial(parse(self.g_num)) * RationalFunction((1.0,),
                                                                                   parse_coefficients(self.g_den))

    def to_carrier(self) -> RationalFunction:
        return parse_rational(self.g0)


class FixtureSection(Section):
    fn_num: Optional[str] = None
    fn_den: Optional[str] = None
    fn_support: Optional[str] = None
    fd_num: Optional[str] = None
    fd_den: Optional[str] = None
    fd_support: Optional[str] = None

    @staticmethod
    def _block(numerator: Optional[str], denominator: Optional[str]) -> Optional[DelaySum]:
        if numerator is None:
            return None
        if denominator is None:
            raise JobFileError("an FIR term needs both a numerator and a denominator")
        return DelaySum.from_quasi_polynomial(parse(numerator)) * RationalFunction((1.0,),
                                                                                  parse_coefficients(denominator))

    def blocks(self) -> Tuple[Optional[DelaySum], Optional[DelaySum]]:
        f_n, f_d = self._block(self.fn_num, self.fn_den), self._block(self.fd_num, self.fd_den)
        if f_n is None and f_d is None:
            raise JobFileError("the [fixture] section holds no FIR term")
        return f_n, f_d


class JobOptions(Section):
    unit_circle_band: Optional[float] = None
    zero_residual: Optional[float] = None
    pole_guard: Optional[float] = None
    axis_guard: Optional[float] = None
    fir_tolerance: Optional[float] = None
    fixture_tolerance: Optional[float] = None
    fixture_horizon: Optional[float] = None
    certification_samples: Optional[int] = None
    max_search_extent: Optional[float] = None

    # Phi settings for rounded input data
    zero_tolerance: Optional[float] = None
    horizon: Optional[float] = None

    # Output grids
    omega_min: float = 1e-2
    omega_max: float = 1e3
    omega_points: int = 200
    impulse_samples: int = 1000

    @field_validator("omega_min", "omega_max")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("frequencies must be positive")
        return value

    def tolerances(self, base: Tolerances = DEFAULT_TOLERANCES) -> Tolerances:
        return base.with_overrides(
            unit_circle_band=self.unit_circle_band, zero_residual=self.zero_residual, pole_guard=self.pole_guard,
            axis_guard=self.axis_guard, fir_tolerance=self.fir_tolerance,
            fixture_tolerance=self.fixture_tolerance, fixture_horizon=self.fixture_horizon,
            certification_samples=self.certification_samples, max_search_extent=self.max_search_extent,
        )


class JobFile(BaseModel):
    """One job: the sections a command needs plus shared options."""
    path: Path
    quasi_polynomial: Optional[QuasiPolynomialSection] = None
    plant: Optional[PlantSection] = None
    weights: Optional[WeightsSection] = None
    synthesis: Optional[SynthesisSection] = None
    phi: Optional[PhiSection] = None
    fixture: Optional[FixtureSection] = None
    options: JobOptions = JobOptions()

    def require(self, name: str):
        section = getattr(self, name)
        if section is None:
            raise JobFileError(f"{self.path.name} has no [{name}] section")
        return section

    def output_path(self, suffix: str) -> Path:
        """Sibling file of the job: jobs/p1.ini + "_fn.csv" -> jobs/p1_fn.csv."""
        return self.path.with_name(f"{self.path.stem}{suffix}")


def load_job(path) -> JobFile:
    """
    Reads a sectioned key/value job file.

    Args:
        path: Path to the job file.

    Returns:
        JobFile: The validated job.

    Raises:
        JobFileError: If the file is missing, malformed, or has unknown sections or keys.
    """
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as error:
        raise JobFileError(f"cannot read job file {path}: {error}") from error
    except configparser.Error as error:
        raise JobFileError(f"malformed job file {path}: {error}") from error

    unknown = [name for name in parser.sections() if name not in SECTIONS]
    if unknown:
        raise JobFileError(f"unknown sections {unknown} in {path.name}")
    data = {name: dict(parser.items(name)) for name in parser.sections()}
    logger.debug("job %s with sections %s", path.name, list(data))
    try:
        return JobFile(path=path, **data)
    except ValidationError as error:
        raise JobFileError(f"invalid job file {path.name}: {error}") from error
