import math

import matplotlib.pyplot as plt
import numpy as np
import pytest

from src.lti import DelaySum, RationalFunction
from src.phi import FirBlock
from src.plots import analyze_root_map, plot_impulse_response, plot_root_map
from src.qpoly import parse
from src.rootfinder import Rectangle


@pytest.fixture(autouse=True)
def no_windows(monkeypatch):
    monkeypatch.setattr(plt, "show", lambda *args, **kwargs: None)
    yield
    plt.close("all")


def test_analyze_root_map():
    tables = analyze_root_map(parse("1 3 2 @ 0"), Rectangle(-3.0, 1.0, -1.0, 1.0))
    (label, table), = tables.items()
    assert label == "s^2 + 3s + 2"
    assert list(table.columns) == ["re", "im", "multiplicity"]
    np.testing.assert_allclose(sorted(table["re"]), [-2.0, -1.0], atol=1e-8)


def test_root_map_with_conjugate(q2, tmp_path):
    target = tmp_path / "roots.png"
    fig = plot_root_map(q2, Rectangle(-3.0, 3.0, -20.0, 20.0), conjugate=True, save_fig_as=target)
    assert target.stat().st_size > 0
    assert len(fig.axes[0].get_legend().get_texts()) == 2


def test_impulse_response_plot(tmp_path):
    integrator = RationalFunction((1.0,), (1.0, 0.0))
    block = FirBlock(DelaySum.from_pairs([(integrator, 0), (-integrator, 1)]), 1)
    target = tmp_path / "impulse.png"
    fig = plot_impulse_response(block, save_fig_as=target)
    assert target.stat().st_size > 0
    line = fig.axes[0].lines[0]
    assert math.isclose(max(line.get_ydata()), 1.0)
    assert max(line.get_xdata()) == pytest.approx(2.0)
