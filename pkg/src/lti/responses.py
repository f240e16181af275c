from pathlib import Path
from typing import Sequence, Union

import numpy as np
import pandas as pd

from src.lti.delay_sum import DelaySum
from src.lti.rational import RationalFunction
from src.lti.residues import impulse_response

CSV_FLOAT_FORMAT = "%.17g"


def impulse_response_frame(g: Union[DelaySum, RationalFunction], grid: Sequence[float]) -> pd.DataFrame:
    """
    Impulse response samples as a DataFrame with columns ``t`` and ``f``.
    """
    times = np.asarray(grid, dtype=float)
    return pd.DataFrame({"t": times, "f": impulse_response(g, times)})


def frequency_response(system, omegas: Sequence[float]) -> pd.DataFrame:
    """
    Frequency response of anything callable at complex points (rational functions, delay sums, ratio
    expressions, controllers).

    Args:
        system: Object with an ``evaluate`` method or a plain callable.
        omegas (Sequence[float]): Angular frequencies.

    Returns:
        pd.DataFrame: Columns ``omega``, ``re``, ``im``.
    """
    frequencies = np.asarray(omegas, dtype=float)
    evaluator = getattr(system, "evaluate", system)
    values = np.asarray(evaluator(1j * frequencies), dtype=complex)
    return pd.DataFrame({"omega": frequencies, "re": values.real, "im": values.imag})


def export_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Writes a response frame with 17 significant digits and no index column."""
    path = Path(path)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path
