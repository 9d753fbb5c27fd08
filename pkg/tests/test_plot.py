import io
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from cevia.curve_engine import quartic_discriminant
from cevia.plot import sample_curve, solve_y, to_csv, to_svg


def test_solve_y_at_origin():
    assert solve_y(Fraction(-3), Fraction(0)) == (0.0, 1.0)


def test_solve_y_no_real_branch():
    # D(x) < 0 on (1/3, 1) for a = -3
    assert solve_y(Fraction(-3), Fraction(1, 2)) is None


def test_solve_y_pole():
    with pytest.raises(ZeroDivisionError):
        solve_y(Fraction(-3), Fraction(1, 3))


def test_sample_curve_skips_poles():
    curve = sample_curve(Fraction(-3), Fraction(-2), Fraction(2), 13)
    assert curve.poles == 1
    assert len(curve.frame) == 12
    assert not np.isclose(curve.frame["x"], 1 / 3).any()
    assert set(curve.lead_sign) == {-1, 1}


def test_sample_curve_builds_quartic_once(monkeypatch):
    calls = []

    def counting(a):
        calls.append(a)
        return quartic_discriminant(a)

    monkeypatch.setattr("cevia.plot.quartic_discriminant", counting)
    curve = sample_curve(Fraction(-3), Fraction(-2), Fraction(2), 41)
    assert len(calls) == 1
    row = curve.frame.iloc[0]
    assert (row["y1"], row["y2"]) == solve_y(Fraction(-3), Fraction(-2))


def test_csv_has_empty_cells():
    curve = sample_curve(Fraction(-3), Fraction(0), Fraction(1), 5)
    text = to_csv(curve)
    lines = text.splitlines()
    assert lines[0] == "x,y1,y2"
    assert "0.5,," in lines
    df = pd.read_csv(io.StringIO(text))
    row = df[df["x"] == 0].iloc[0]
    assert (row["y1"], row["y2"]) == (0.0, 1.0)


def test_svg_polylines_and_markers():
    a = Fraction(-3)
    curve = sample_curve(a, Fraction(-2), Fraction(2), 13)
    svg = to_svg(curve, a, -2.0, 2.0, -4.0, 4.0)
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count('class="vertex"') == 3
    assert "<polyline" in svg
    assert "poles: 1" in svg


def test_markers_outside_window_are_dropped():
    a = Fraction(1)
    curve = sample_curve(a, Fraction(2), Fraction(3), 5)
    svg = to_svg(curve, a, 2.0, 3.0, -4.0, 4.0)
    assert 'class="vertex"' not in svg
