from pathlib import Path

import matplotlib
import pytest

from src.factorization import PlantDescription
from src.qpoly import parse

matplotlib.use("Agg")

JOBS = Path(__file__).resolve().parent.parent / "jobs"


@pytest.fixture
def jobs_dir() -> Path:
    return JOBS


@pytest.fixture
def q1():
    # Neutral, finitely many C+ roots
    return parse("3 0.5 @ 0 ; 2 7 @ 3/2 ; 1 -1 @ 2")


@pytest.fixture
def q2():
    # Infinitely many C+ roots, the conjugate has exactly one
    return parse("1 3 @ 0 ; 2 -2 @ 0.4")


@pytest.fixture
def p1() -> PlantDescription:
    return PlantDescription(parse("1 -2 3 @ 0 ; 0.2 0 @ 1"), parse("1 0 0 1 @ 0 ; 1 @ 1.5"))


@pytest.fixture
def p2(q1) -> PlantDescription:
    return PlantDescription(parse("1 -1 @ 0.2 ; 0.1 1 @ 0.3 ; 0.2 -3 @ 1"), q1)


@pytest.fixture
def p3() -> PlantDescription:
    return PlantDescription(parse("1 3 @ 0 ; 2 -2 @ 0.4"), parse("1 0 0 @ 0 ; 1 0 @ 0.2 ; 5 @ 0.5"))


@pytest.fixture
def copy_job(tmp_path):
    """Copies a shipped job file into tmp_path so CSV outputs land there."""
    def _copy(name: str) -> Path:
        target = tmp_path / name
        target.write_text((JOBS / name).read_text(encoding="utf-8"), encoding="utf-8")
        return target
    return _copy
