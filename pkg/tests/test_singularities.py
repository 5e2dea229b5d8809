import numpy as np
import pytest

from focalsets.curvedsl import CurveDef, curve, parse_expr, position, substitute
from focalsets.errors import GeometryError, UndefinedContactError
from focalsets.frames import frame_r31
from focalsets.minkowski import mdot
from focalsets.singularities import (
    ContactSphereType,
    LocalModel,
    SingClass,
    a_at_least,
    a_singularity,
    classify,
    contact_sphere_type,
    dist_jet,
    local_model,
)


def test_dist_jet_degenerate_circle(circle_s21):
    dj = dist_jet(circle_s21, 0.7, [0.0, 0.0, 0.0])
    assert dj.d(0) == pytest.approx(1.0, abs=1e-12)
    for p in range(1, 6):
        assert dj.d(p) == pytest.approx(0.0, abs=1e-12)


def test_dist_jet_zero_at_curve_point(cubic_graph):
    v = position(cubic_graph, 0.2)
    dj = dist_jet(cubic_graph, 0.2, v)
    assert dj.d(0) == pytest.approx(0.0, abs=1e-15)


def test_dist_jet_first_derivative_identity(cubic_graph):
    rng = np.random.default_rng(42)
    for _ in range(100):
        t = float(rng.uniform(-0.45, 0.45))
        v = rng.uniform(-2, 2, size=3)
        dj = dist_jet(cubic_graph, t, v)
        c = position(cubic_graph, t)
        gp = np.array([j.d(1) for j in __import__("focalsets").eval_jet(cubic_graph, t, 1)])
        expected = 2.0 * mdot(c - v, gp)
        assert dj.d(1) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_classify_examples(cubic_graph):
    assert classify(cubic_graph, 0.0, [0, 0, -2]) == a_singularity(2)
    cls = classify(cubic_graph, 0.0, [0, 0, 1])  # mu0 point
    assert cls == a_singularity(3) or cls.at_least(3)


def test_classify_degenerate_constant(circle_s21):
    assert classify(circle_s21, 0.0, [-5, 0, 0]).kind == "degenerate_constant"
    assert classify(circle_s21, 0.0, [0, 0, 0]).kind == "degenerate_constant"


def test_classify_regular_and_a1(cubic_graph):
    # generic v: f' != 0
    assert classify(cubic_graph, 0.2, [5.0, 1.0, 2.0]).kind == "regular"
    # v in the normal plane but off the focal line: A1
    fr = frame_r31(cubic_graph, 0.2)
    v = fr.gamma + 0.17 * fr.n + 0.3 * fr.b
    cls = classify(cubic_graph, 0.2, v)
    assert cls == a_singularity(1)


def test_classify_a4_and_age5(a4_vertex):
    assert classify(a4_vertex, 0.0, [0, 0, 1]) == a_singularity(4)
    flat6 = curve(["0", "t", "t^2/2 + t^4/8"], "R31", (-0.5, 0.5))
    assert classify(flat6, 0.0, [0, 0, 1]) == a_at_least(5)


def test_local_model_labels():
    assert local_model(a_singularity(2)) is LocalModel.PLANE
    assert local_model(a_singularity(3)) is LocalModel.CUSPIDAL_EDGE
    assert local_model(a_singularity(4)) is LocalModel.SWALLOWTAIL
    for bad in (a_singularity(1), a_at_least(3), SingClass("regular")):
        with pytest.raises(ValueError):
            local_model(bad)


def test_contact_sphere_types(circle_s21):
    hyp = curve(["sinh(t)", "cosh(t)", "0"], "R31", (-1.0, 1.0))
    assert contact_sphere_type(circle_s21, 0.0, [0, 0, 0]) is ContactSphereType.DE_SITTER_LIKE
    assert contact_sphere_type(hyp, 0.3, [0, 0, 0]) is ContactSphereType.DE_SITTER_LIKE
    v = position(circle_s21, 0.5) + np.array([1.0, 1.0, 0.0])
    assert contact_sphere_type(circle_s21, 0.5, v) is ContactSphereType.LIGHTCONE_LIKE
    v = position(circle_s21, 0.5) + np.array([2.0, 0.1, 0.0])
    assert contact_sphere_type(circle_s21, 0.5, v) is ContactSphereType.HYPERBOLIC_LIKE
    with pytest.raises(UndefinedContactError):
        contact_sphere_type(circle_s21, 0.5, position(circle_s21, 0.5))


def test_membership_characterization(timelike_fixture):
    """Non-regular at (t, v) iff <gamma - v, gamma'> = 0 (v in the normal plane)."""
    rng = np.random.default_rng(0)
    for _ in range(40):
        t = float(rng.uniform(-0.8, 0.8))
        fr = frame_r31(timelike_fixture, t)
        lam, mu = rng.uniform(-2, 2, size=2)
        v_on = fr.gamma + lam * fr.n + mu * fr.b
        assert classify(timelike_fixture, t, v_on).kind != "regular"
        v_off = v_on + float(rng.uniform(0.1, 1.0)) * fr.t
        assert classify(timelike_fixture, t, v_off).kind == "regular"


def test_tolerance_monotonicity(cubic_graph, a4_vertex):
    """Loosening tol never decreases the certified order."""
    cases = [
        (cubic_graph, 0.0, np.array([0.0, 0.0, -2.0])),
        (cubic_graph, 0.0, np.array([0.0, 0.0, 1.0])),
        (a4_vertex, 0.0, np.array([0.0, 0.0, 1.0])),
    ]
    order_of = {"regular": 0, "A": None, "A_ge": None, "degenerate_constant": 99}

    def rank(c):
        return order_of[c.kind] if c.kind in ("regular", "degenerate_constant") else c.order

    for cu, t, v in cases:
        ranks = [rank(classify(cu, t, v, tol)) for tol in (1e-12, 1e-10, 1e-8, 1e-6)]
        assert ranks == sorted(ranks)


def test_classification_reparametrization_invariant(cubic_graph, timelike_fixture):
    phi = parse_expr("t + t^3/10")
    rng = np.random.default_rng(9)
    for base in (cubic_graph, timelike_fixture):
        reparam = CurveDef(
            tuple(substitute(c, phi) for c in base.components), base.ambient, (-0.4, 0.4)
        )
        for _ in range(30):
            u = float(rng.uniform(-0.35, 0.35))
            t = u + u**3 / 10
            v = rng.uniform(-1.5, 1.5, size=3)
            assert classify(base, t, v) == classify(reparam, u, v)


def test_sing_class_str():
    assert str(a_singularity(3)) == "A3"
    assert str(a_at_least(5)) == "A_ge(5)"
    assert str(SingClass("regular")) == "Regular"
    assert str(SingClass("degenerate_constant")) == "DegenerateConstant"
