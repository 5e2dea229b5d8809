import math

import numpy as np
import pytest

from focalsets.causal import (
    arclength_jet,
    find_lightlike_points,
    omega_check,
    speed_sq,
    split_arcs,
)
from focalsets.curvedsl import CurveDef, curve, parse_expr, substitute
from focalsets.errors import GeometryError, GuardBandError
from focalsets.minkowski import CausalType


def test_speed_sq_examples(s21_example, timelike_fixture, helix_spacelike):
    assert speed_sq(s21_example, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert speed_sq(timelike_fixture, 0.0) == pytest.approx(-3.0, abs=1e-12)
    assert speed_sq(helix_spacelike, 0.0) == pytest.approx(3.0, abs=1e-12)
    # closed form 8t + 36 t^4 / (1 - 4 t^3) on the S21 example
    for t in (-0.2, 0.1, 0.25):
        expected = 8 * t + 36 * t**4 / (1 - 4 * t**3)
        assert speed_sq(s21_example, t) == pytest.approx(expected, rel=1e-12)


def test_find_lightlike_s21_example(s21_example):
    pts = find_lightlike_points(s21_example)
    assert len(pts) == 1
    p = pts[0]
    assert abs(p.t_star) <= 1e-10
    assert p.certified
    assert p.omega_value == pytest.approx(4.0, abs=1e-9)
    assert p.speed_derivative == pytest.approx(8.0, abs=1e-9)


def test_find_lightlike_none(timelike_fixture):
    assert find_lightlike_points(timelike_fixture) == []


def test_find_lightlike_cubic(cubic_graph):
    pts = find_lightlike_points(cubic_graph)
    assert len(pts) == 1
    assert abs(pts[0].t_star) <= 1e-10
    assert pts[0].certified
    assert pts[0].omega_value == pytest.approx(2.0, abs=1e-9)


def test_find_lightlike_tangential_uncertified():
    # speed^2 = -sin^2 t: tangential zero at t = 0, omega = 0 there
    cu = curve(["t", "sin(t)", "0"], "R31", (-1.0, 1.0))
    pts = find_lightlike_points(cu)
    assert len(pts) == 1
    assert abs(pts[0].t_star) <= 1e-6
    assert not pts[0].certified


def test_isolation_stable_under_grid_doubling(s21_example, cubic_graph, wobble_s21):
    for cu in (s21_example, cubic_graph, wobble_s21):
        n1 = len(find_lightlike_points(cu, grid=4096))
        n2 = len(find_lightlike_points(cu, grid=8192))
        assert n1 == n2


def test_omega_check_examples(s21_example, cubic_graph):
    # cubic graph: gamma'(0) = (1,1,0), gamma''(0) = (0,2,0) -> value 2
    chk = omega_check(cubic_graph, 0.0)
    assert chk.satisfied
    assert chk.value == pytest.approx(2.0, abs=1e-12)
    assert omega_check(s21_example, 0.0).value == pytest.approx(4.0, abs=1e-12)
    flat = curve(["t", "sin(t)", "0"], "R31", (-1.0, 1.0))
    chk = omega_check(flat, 0.0)
    assert not chk.satisfied and chk.value == pytest.approx(0.0, abs=1e-12)


def test_split_arcs_s21_example(s21_example):
    pts = find_lightlike_points(s21_example)
    arcs = split_arcs(s21_example, pts)
    assert [a.kind for a in arcs] == [CausalType.TIMELIKE, CausalType.SPACELIKE]
    assert arcs[0].interval[0] == s21_example.domain[0]
    assert arcs[1].interval[1] == s21_example.domain[1]


def test_split_arcs_single(timelike_fixture):
    arcs = split_arcs(timelike_fixture, [])
    assert len(arcs) == 1 and arcs[0].kind is CausalType.TIMELIKE


def test_split_arcs_cubic(cubic_graph):
    pts = find_lightlike_points(cubic_graph)
    arcs = split_arcs(cubic_graph, pts)
    assert [a.kind for a in arcs] == [CausalType.TIMELIKE, CausalType.SPACELIKE]


def test_sign_alternation_around_certified(wobble_s21, s21_example):
    for cu in (wobble_s21, s21_example):
        pts = find_lightlike_points(cu)
        arcs = split_arcs(cu, pts)
        for i, p in enumerate(pts):
            if p.certified:
                assert arcs[i].kind is not arcs[i + 1].kind


def test_arclength_unit_tangent_circle():
    cu = curve(["0", "cos(2*t)", "sin(2*t)"], "R31", (-1.0, 1.0))
    jets = arclength_jet(cu, 0.0, 1)
    tangent = [j.d(1) for j in jets]
    assert tangent == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)


def test_arclength_identity_when_unit_speed():
    cu = curve(["sinh(t)", "cosh(t)", "0"], "R31", (-1.0, 1.0))
    jets = arclength_jet(cu, 0.3, 3)
    direct = [
        (math.sinh(0.3), math.cosh(0.3), 0.0),
        (math.cosh(0.3), math.sinh(0.3), 0.0),
        (math.sinh(0.3), math.cosh(0.3), 0.0),
        (math.cosh(0.3), math.sinh(0.3), 0.0),
    ]
    for k in range(4):
        got = [j.d(k) for j in jets]
        assert got == pytest.approx(direct[k], abs=1e-12)


def test_arclength_unit_speed_property(timelike_fixture, helix_spacelike):
    rng = np.random.default_rng(7)
    for cu, sign in ((timelike_fixture, -1.0), (helix_spacelike, 1.0)):
        for t in rng.uniform(-0.9, 0.9, size=100):
            jets = arclength_jet(cu, float(t), 1)
            g1 = np.array([j.d(1) for j in jets])
            q = -g1[0] ** 2 + g1[1] ** 2 + g1[2] ** 2
            assert q == pytest.approx(sign, abs=1e-10)


def test_arclength_guard_band(s21_example):
    with pytest.raises(GuardBandError):
        arclength_jet(s21_example, 0.0, 1)
    with pytest.raises(GuardBandError):
        arclength_jet(s21_example, 1e-9, 2)


def test_arclength_reparametrization_consistency(cubic_graph):
    phi = parse_expr("t + t^3/10")
    reparam = CurveDef(
        tuple(substitute(c, phi) for c in cubic_graph.components),
        cubic_graph.ambient,
        (-0.45, 0.45),
    )
    for u in (0.2, 0.3, -0.25):
        t = u + u**3 / 10
        j1 = arclength_jet(cubic_graph, t, 1)
        j2 = arclength_jet(reparam, u, 1)
        for a, b in zip(j1, j2):
            assert a.d(1) == pytest.approx(b.d(1), abs=1e-8)


def test_split_arcs_degenerate_midpoint(s21_example):
    # pretend the lightlike point was missed: the midpoint of (-eps, eps) is
    # lightlike itself and must be refused
    with pytest.raises(GeometryError):
        bad = curve(["t", "t + t^2", "t^3"], "R31", (-0.5, 0.5))
        split_arcs(bad, [])
