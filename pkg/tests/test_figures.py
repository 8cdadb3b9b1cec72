import math

import numpy as np
import pytest

from kerrsq import figures
from kerrsq.errors import ConfigError


def test_figure_one_curve_a_at_zero():
    c = figures.curves(1)
    x, s = c["a"]
    assert x[0] == 0.0
    assert s[0] == pytest.approx(0.25 * (9 - 4 * math.sqrt(5)), abs=1e-12)
    assert s[0] == pytest.approx(0.013932, abs=1e-6)


def test_figure_one_ordering_at_zero_frequency():
    c = figures.curves(1)
    values = [c[label][1][0] for label in figures.CURVE_LABELS]
    assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("number,anchor", [(2, 0.5), (3, 0.7)])
def test_anchor_figures_touch_optimum_at_anchor(number, anchor):
    from kerrsq.oracles import figure_phases
    from kerrsq.spectra import spectrum_optimal

    c = figures.curves(number)
    x, s = c["c"]
    i = int(np.argmin(np.abs(x - anchor)))
    assert s[i] == pytest.approx(spectrum_optimal(figure_phases(2.0, 3.0, anchor), anchor)[0],
                                 abs=1e-12)


def test_row_layout():
    rows = figures.figure_rows(4)
    assert len(rows) == 5 * 300
    assert rows[0][0] == "a" and rows[-1][0] == "e"
    assert rows[0][1] == pytest.approx(0.01) and rows[299][1] == pytest.approx(3.0)
    assert len(figures.figure_rows(1)) == 5 * 301


def test_presets():
    assert figures.preset(7).Omega == 0.5 and figures.preset(7).Omega0 == 0.5
    assert [figures.preset(n).Omega for n in (4, 5, 6)] == [0.0, 0.3, 0.5]
    assert [figures.preset(n).Omega0 for n in (1, 2, 3)] == [0.0, 0.5, 0.7]
    for bad in (0, 8):
        with pytest.raises(ConfigError):
            figures.preset(bad)


def test_worker_count_does_not_change_rows():
    assert figures.figure_rows(5, workers=1) == figures.figure_rows(5, workers=6)
