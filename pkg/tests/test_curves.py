"""Arclength quadrature and reparametrization.

Oracles are curves whose Lorentzian speed is constant by construction, so
lengths reduce to closed forms.
"""

import math

import numpy as np
import pytest

from mannheim.curves import (CurveDef, arclength, arclength_table,
                             assert_unit_speed, inverse_arclength,
                             unit_speed_deviation)
from mannheim.errors import NullTangentError, UnitSpeedError


def _curve(src, domain=(0.0, 2.0)):
    return CurveDef.from_source(src, domain)


def test_arclength_straight_line():
    c = _curve("(0, 0, s)")
    assert arclength(c, 0.0, 2.0) == pytest.approx(2.0, abs=1e-12)


def test_arclength_timelike_line():
    # speed |<(2,0,0),(2,0,0)>|^(1/2) = 2 regardless of causal character
    c = _curve("(2*s, 0, 0)")
    assert arclength(c, 0.0, 1.5) == pytest.approx(3.0, abs=1e-12)


def test_arclength_circle_speed_two():
    c = _curve("(0, cos(2*s), sin(2*s))", (0.0, 1.0))
    assert arclength(c, 0.0, 1.0) == pytest.approx(2.0, abs=1e-10)


def test_arclength_hyperbolic_unit_speed():
    # <c', c'> = -sinh^2 + cosh^2 = 1 pointwise
    c = _curve("(cosh(s), sinh(s), 0)")
    assert arclength(c, 0.0, 2.0) == pytest.approx(2.0, abs=1e-10)


def test_arclength_additive():
    c = _curve("(0, s^2, s)")
    whole = arclength(c, 0.0, 2.0)
    split = arclength(c, 0.0, 0.7) + arclength(c, 0.7, 2.0)
    assert whole == pytest.approx(split, abs=1e-9)


def test_null_tangent_rejected():
    c = _curve("(s, s, 0)")
    with pytest.raises(NullTangentError):
        arclength(c, 0.0, 1.0)


def test_unit_speed_checks():
    good = _curve("(cosh(s), sinh(s), 0)")
    assert unit_speed_deviation(good) <= 1e-12
    assert_unit_speed(good)
    bad = _curve("(0, 2*s, 0)")
    assert unit_speed_deviation(bad) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(UnitSpeedError):
        assert_unit_speed(bad)


def test_arclength_table_monotone():
    c = _curve("(0, s^2, s)")
    svals, lengths, speeds = arclength_table(c, n=65)
    assert len(svals) == len(lengths) == len(speeds) == 65
    assert lengths[0] == 0.0
    assert np.all(np.diff(lengths) > 0)
    assert speeds[0] == pytest.approx(1.0, abs=1e-12)  # |(0,0,1)| at s=0
    assert lengths[-1] == pytest.approx(arclength(c, 0.0, 2.0), abs=1e-9)


def test_inverse_arclength_round_trip():
    c = _curve("(0, cos(2*s), sin(2*s))", (0.0, 1.0))
    total, inv = inverse_arclength(c)
    assert total == pytest.approx(2.0, abs=1e-9)
    assert inv(0.0) == pytest.approx(0.0, abs=1e-12)
    assert inv(1.0) == pytest.approx(0.5, abs=1e-8)
    for l in np.linspace(0.0, total, 17):
        s = inv(float(l))
        assert arclength(c, 0.0, s) == pytest.approx(float(l), abs=1e-7)


def test_inverse_arclength_nonuniform_speed():
    c = _curve("(0, s^2, s)", (0.0, 2.0))
    total, inv = inverse_arclength(c)
    svals = np.array([inv(float(l)) for l in np.linspace(0, total, 33)])
    assert svals[0] == pytest.approx(0.0, abs=1e-12)
    assert svals[-1] == pytest.approx(2.0, abs=1e-9)
    assert np.all(np.diff(svals) > 0)


def test_eval_matches_components():
    c = _curve("(s, s^2, sin(s))")
    p = c.eval(0.5)
    assert tuple(p) == pytest.approx((0.5, 0.25, math.sin(0.5)), abs=1e-15)
