"""Offset constructions: frame mapping, developability angle, distance law,
trajectory surfaces. Closed-form oracles live on the cone-director surfaces
where every invariant is constant."""

import math

import numpy as np
import pytest

from mannheim import catalog
from mannheim import offsets as off
from mannheim import surfaces as rg
from mannheim.errors import (DegenerateSurfaceError, DivisionByZero,
                             NoRealSolutionError, PairingMismatchError)
from mannheim.vectors import ldot_arr

COSH1, SINH1 = math.cosh(1.0), math.sinh(1.0)
TANH1 = math.tanh(1.0)


def test_pairing_lookup():
    assert off.as_pairing("eq11") is off.Pairing.M1M_TO_M1P
    assert off.as_pairing("M1mToM1m") is off.Pairing.M1M_TO_M1M
    assert off.as_pairing(off.Pairing.M1P_TO_M2P) is off.Pairing.M1P_TO_M2P
    with pytest.raises(ValueError):
        off.as_pairing("eq99")


def test_pairing_tags():
    assert off.Pairing.M1M_TO_M1P.base_tag == "M1-"
    assert off.Pairing.M1M_TO_M1P.target_tag == "M1+"
    assert off.Pairing.M1M_TO_M1M.target_tag == "M1-"
    assert off.Pairing.M1P_TO_M2P.base_tag == "M1+"
    assert off.Pairing.M1P_TO_M2P.target_tag == "M2+"
    assert off.Pairing.M1P_TO_M2P.cli_name == "eq13"


def test_offset_frame_rows(cone_m):
    f = rg.frenet_frame(cone_m, 0.4)
    th = 0.3
    q_s, h_s, a_s = off.offset_frame(f, th, "eq11")
    want_q = math.sinh(th) * f.q + math.cosh(th) * f.h
    want_a = math.cosh(th) * f.q + math.sinh(th) * f.h
    assert np.max(np.abs(q_s - want_q)) <= 1e-15
    assert np.max(np.abs(h_s - f.a)) == 0.0
    assert np.max(np.abs(a_s - want_a)) <= 1e-15

    q_s, h_s, a_s = off.offset_frame(f, th, "eq12")
    want_q = math.cosh(th) * f.q + math.sinh(th) * f.h
    want_a = math.sinh(th) * f.q + math.cosh(th) * f.h
    assert np.max(np.abs(q_s - want_q)) <= 1e-15
    assert np.max(np.abs(a_s - want_a)) <= 1e-15


def test_offset_frame_rows_circular(cone_p):
    f = rg.frenet_frame(cone_p, 0.4)
    th = 0.3
    q_s, h_s, a_s = off.offset_frame(f, th, "eq13")
    want_q = math.cos(th) * f.q + math.sin(th) * f.h
    want_a = math.sin(th) * f.q - math.cos(th) * f.h
    assert np.max(np.abs(q_s - want_q)) <= 1e-15
    assert np.max(np.abs(h_s - f.a)) == 0.0
    assert np.max(np.abs(a_s - want_a)) <= 1e-15


def test_offset_frame_pairing_mismatch(cone_m, cone_p):
    with pytest.raises(PairingMismatchError):
        off.offset_frame(rg.frenet_frame(cone_m, 0.4), 0.1, "eq13")
    with pytest.raises(PairingMismatchError):
        off.offset_frame(rg.frenet_frame(cone_p, 0.4), 0.1, "eq11")


def test_offset_frame_is_pseudo_orthonormal(cone_m, cone_p):
    for surf, pairing, eps in [(cone_m, "eq11", (1, 1)),
                               (cone_m, "eq12", (-1, 1)),
                               (cone_p, "eq13", (1, -1))]:
        f = rg.frenet_frame(surf, 0.3)
        q_s, h_s, a_s = off.offset_frame(f, 0.45, pairing)
        e2, e1 = eps
        assert ldot_arr(q_s, q_s) == pytest.approx(e2, abs=1e-12)
        assert ldot_arr(h_s, h_s) == pytest.approx(e1, abs=1e-12)
        assert ldot_arr(a_s, a_s) == pytest.approx(-e1 * e2, abs=1e-12)
        assert ldot_arr(q_s, h_s) == pytest.approx(0.0, abs=1e-12)
        assert ldot_arr(q_s, a_s) == pytest.approx(0.0, abs=1e-12)


def test_solve_theta_frozen_value():
    # artanh(1/2) computed independently: 0.5*ln(3)
    th = off.solve_theta("eq11", R=-2.0 / (SINH1 * (COSH1 / SINH1)), kappa=COSH1 / SINH1,
                         ds1_ds=SINH1)
    assert th == pytest.approx(0.5 * math.log(3.0), abs=1e-15)


def test_solve_theta_zeroes_residual():
    cases = [("eq11", -1.7), ("eq12", 0.6), ("eq13", 2.3), ("eq13", -0.4)]
    for pairing, x in cases:
        th = off.solve_theta(pairing, x, 1.0, 1.0)
        res = off.developability_residual(pairing, th, x, 1.0, 1.0)
        assert abs(res) <= 1e-14, (pairing, x)


def test_solve_theta_no_real_solution():
    with pytest.raises(NoRealSolutionError) as ei:
        off.solve_theta("eq11", 0.5, 1.0, 1.0)
    assert ei.value.value == pytest.approx(0.5)
    assert ">" in ei.value.bound
    with pytest.raises(NoRealSolutionError) as ei:
        off.solve_theta("eq12", 1.5, 1.0, 1.0)
    assert "<" in ei.value.bound


def test_developability_residual_forms():
    th, x = 0.37, 1.4
    want = math.cosh(th) + x * math.sinh(th)
    assert off.developability_residual("eq11", th, x, 1.0, 1.0) == pytest.approx(want)
    want = math.sinh(th) + x * math.cosh(th)
    assert off.developability_residual("eq12", th, x, 1.0, 1.0) == pytest.approx(want)
    want = math.sin(th) - x * math.cos(th)
    assert off.developability_residual("eq13", th, x, 1.0, 1.0) == pytest.approx(want)


def _const_theta_offset(base, pairing, R=1.0):
    # the hyperbolic-to-self pairing solves only for |R w kappa| < 1
    f = rg.frenet_frame(base, 0.5 * sum(base.domain))
    th = off.solve_theta(pairing, R, f.kappa, f.ds1_ds)
    return off.OffsetSpec(base, repr(R), repr(th), pairing)


def test_offset_developable_at_solved_angle(cone_m, cone_p):
    for base, pairing, r in [(cone_m, "eq11", 1.0), (cone_m, "eq12", 0.5),
                             (cone_p, "eq13", 1.0)]:
        spec = _const_theta_offset(base, pairing, r)
        surf = off.build_offset(spec)
        svals = np.linspace(base.domain[0] + 0.05, base.domain[1] - 0.05, 33)
        assert np.max(np.abs(rg.drall_grid(surf, svals))) <= 1e-12, pairing


def test_offset_type_transition(cone_m, cone_p):
    for base, pairing, r, target in [(cone_m, "eq11", 1.0, "M1+"),
                                     (cone_m, "eq12", 0.5, "M1-")]:
        surf = off.build_offset(_const_theta_offset(base, pairing, r))
        assert rg.classify_surface(surf).tag == target
    # the circular pairing needs the angle evolving with arclength to land
    # on the target type; a constant angle stays in M1+
    surf = off.build_offset(_const_theta_offset(cone_p, "eq13"))
    assert rg.classify_surface(surf).tag == "M1+"
    spec = off.OffsetSpec(cone_p, "1", f"3 - {COSH1!r}*s", "eq13")
    assert rg.classify_surface(off.build_offset(spec)).tag == "M2+"


def test_mannheim_condition_requires_evolving_theta(cone_m):
    spec = off.OffsetSpec(cone_m, "1", f"3 - {SINH1!r}*s", "eq11")
    assert off.mannheim_condition_check(cone_m, off.build_offset(spec))
    const = off.OffsetSpec(cone_m, "1", "0.8", "eq11")
    assert not off.mannheim_condition_check(cone_m, off.build_offset(const))


def test_theta_evolution_residual(cone_m):
    spec = off.OffsetSpec(cone_m, "1", f"3 - {SINH1!r}*s", "eq11")
    svals = np.linspace(0.1, 1.9, 9)
    assert np.max(np.abs(off.theta_evolution_residual_grid(spec, svals))) <= 1e-12
    const = off.OffsetSpec(cone_m, "1", "0.8", "eq11")
    assert off.theta_evolution_residual(const, 1.0) == pytest.approx(SINH1)


def test_striction_offset_residual(cone_m, helicoid):
    # constant R on a developable base keeps c* at the offset striction
    spec = off.OffsetSpec(cone_m, "1", "0.5", "eq11")
    svals = np.linspace(0.1, 1.9, 17)
    assert np.max(np.abs(off.striction_offset_residual_grid(spec, svals))) <= 1e-12
    # helicoid: drall -1, w = 1, eps2 = -1, so R' = -1 cancels exactly
    spec = off.OffsetSpec(helicoid, "0 - s", "0.5", "eq11")
    assert abs(off.striction_offset_residual(spec, 1.0)) <= 1e-12
    # and R constant on the non-developable base misses by eps2*w*drall = +1
    spec = off.OffsetSpec(helicoid, "1", "0.5", "eq11")
    assert off.striction_offset_residual(spec, 1.0) == pytest.approx(1.0)


def test_characterization_residual_law_bases(law_m1m, law_m1p):
    svals = np.linspace(0.1, 1.9, 17)
    res = off.characterization_residual_grid(law_m1m, 1.0, svals, "M1Minus")
    assert np.max(np.abs(res)) <= 1e-10
    s1 = np.linspace(0.05, catalog.M1_PLUS_SPAN - 0.05, 17)
    res = off.characterization_residual_grid(law_m1p, 1.0, s1, "M1Plus")
    assert np.max(np.abs(res)) <= 1e-10


def test_characterization_residual_control():
    # constant curvature 1/2 misses the law by (R^2 kappa^2 - 1)/R = -0.75
    surf = rg.integrate_frame("M1-", "0.5", "1", catalog.SEED_M1_MINUS,
                              (0.0, 0.0, 0.0), (0.0, 2.0))
    res = off.characterization_residual(surf, 1.0, 1.0, "M1Minus")
    assert res == pytest.approx(-0.75, abs=1e-9)


def test_characterization_residual_rejects(helicoid, law_m1m):
    with pytest.raises(ValueError):
        off.characterization_residual(law_m1m, 0.0, 1.0, "M1Minus")
    with pytest.raises(ValueError):
        off.characterization_residual(law_m1m, 1.0, 1.0, "M3")
    with pytest.raises(DegenerateSurfaceError):
        off.characterization_residual(helicoid, 1.0, 1.0, "M1Minus")


def _mannheim_spec(base, pairing, R="1"):
    w = SINH1 if pairing in ("eq11", "eq12") else COSH1
    return off.OffsetSpec(base, R, f"3 - {w!r}*s", pairing)


def test_trajectory_dralls_closed_form(cone_m):
    # w*kappa = cosh(1) on the cone, so p_h* = -1/cosh(1) for both
    # hyperbolic pairings, independent of theta
    spec = _mannheim_spec(cone_m, "eq11")
    e = off.trajectory_dralls(spec, 0.7)
    assert e.p_h_star == pytest.approx(-1.0 / COSH1, abs=1e-12)
    assert e.bertrand_ok and e.mannheim_ok
    spec = _mannheim_spec(cone_m, "eq12")
    e = off.trajectory_dralls(spec, 0.7)
    assert e.p_h_star == pytest.approx(-1.0 / COSH1, abs=1e-12)


def test_trajectory_dralls_circular(cone_p):
    # w*kappa = cosh(1)*tanh(1) = sinh(1) on the spacelike-director cone
    spec = _mannheim_spec(cone_p, "eq13")
    e = off.trajectory_dralls(spec, 0.4)
    assert e.p_h_star == pytest.approx(1.0 / SINH1, abs=1e-12)


def test_trajectory_measured_matches_closed_form(cone_m):
    spec = _mannheim_spec(cone_m, "eq11")
    svals = np.linspace(0.3, 1.2, 5)
    rep = off.trajectory_report(spec, svals)
    assert np.max(np.abs(rep.p_h_star_measured - rep.p_h_star)) <= 1e-8
    assert np.max(np.abs(rep.p_a_star_measured - rep.p_a_star)) <= 1e-8
    assert rep.bertrand_defect <= 1e-8
    assert rep.mannheim_defect <= 1e-8


def test_trajectory_frames_orientation(cone_m):
    spec = _mannheim_spec(cone_m, "eq11")
    f_h, f_a = off.trajectory_frames(spec, 0.7)
    base = rg.frenet_frame(cone_m, 0.7)
    # the h-trajectory's central normal stays parallel to the base central
    # normal (Bertrand), the a-trajectory's to the base asymptotic normal
    # (Mannheim); orientation is normalized toward the base frame
    assert float(np.dot(f_h.h, base.h)) > 0.0
    assert np.linalg.norm(np.cross(f_h.h, base.h)) <= 1e-9
    assert float(np.dot(f_a.h, base.a)) > 0.0
    assert np.linalg.norm(np.cross(f_a.h, base.a)) <= 1e-9


def test_trajectory_pole_exclusion(cone_m):
    # sinh(theta) vanishes at s = 3/sinh(1); put a grid point right on it
    base = catalog.cone_m1_minus(domain=(2.0, 2.7))
    spec = _mannheim_spec(base, "eq11")
    root = 3.0 / SINH1
    svals = np.array([2.0, 2.2, 2.4, root, 2.65, 2.7])
    good, intervals = off.pole_exclusions(spec, svals)
    assert list(good) == [True, True, True, False, True, True]
    assert intervals == [(root, root)]
    rep = off.trajectory_report(spec, svals)
    assert rep.excluded == intervals
    assert len(rep.s) == 5
    # away from the pole the measured dralls track the closed forms
    assert np.max(np.abs(rep.p_h_star_measured - rep.p_h_star)) <= 1e-9
    assert np.max(np.abs(rep.p_a_star_measured - rep.p_a_star)) <= 1e-6


def test_trajectory_all_excluded_raises(helicoid):
    # kappa = 0 everywhere: the directing cone degenerates to a cylinder
    spec = _mannheim_spec(helicoid, "eq11")
    with pytest.raises(DivisionByZero):
        off.trajectory_report(spec, np.linspace(0.1, 1.9, 33))


def test_mask_intervals():
    svals = np.linspace(0.0, 1.0, 11)
    bad = np.zeros(11, dtype=bool)
    bad[[0, 3, 4, 10]] = True
    ivs = off.mask_intervals(svals, bad)
    assert ivs == [(svals[0], svals[0]), (svals[3], svals[4]),
                   (svals[10], svals[10])]
    assert off.mask_intervals(svals, np.zeros(11, dtype=bool)) == []


def test_offset_spec_validates_base(cone_p):
    with pytest.raises(PairingMismatchError):
        off.build_offset(off.OffsetSpec(cone_p, "1", "0.3", "eq11"))


def test_trajectory_surfaces_share_base(cone_m):
    spec = _mannheim_spec(cone_m, "eq11")
    f_h, f_a = off.trajectory_surfaces(spec)
    svals = np.linspace(0.2, 1.0, 5)
    # both trajectory surfaces ride on the offset striction curve c*
    assert np.max(np.abs(f_h.base_grid(svals, 0) - f_a.base_grid(svals, 0))) == 0.0
    offset = off.build_offset(spec)
    assert np.max(np.abs(f_h.base_grid(svals, 0) - offset.base_grid(svals, 0))) == 0.0
