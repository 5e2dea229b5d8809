import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from focalsets.curvedsl import (
    Ambient,
    BinOp,
    Call,
    Const,
    CurveDef,
    Neg,
    Pow,
    Var,
    curve,
    eval_jet,
    parse_curve,
    parse_expr,
    position,
    pretty,
    substitute,
    validate_on_sphere,
)
from focalsets.errors import CurveSyntaxError, EvalDomainError


def test_parse_component_examples():
    assert parse_expr("t^2 - t") == BinOp("-", Pow(Var(), 2.0), Var())
    assert parse_expr("sqrt(1 - 4*t^3)") == Call(
        "sqrt", BinOp("-", Const(1.0), BinOp("*", Const(4.0), Pow(Var(), 3.0)))
    )
    with pytest.raises(CurveSyntaxError):
        parse_expr("t +")


def test_parse_errors_carry_position():
    with pytest.raises(CurveSyntaxError) as err:
        parse_expr("t + $")
    assert "column 5" in str(err.value)


def test_parse_curve_file():
    text = """
    # an S21 curve
    space = S21
    x1 = t^2 - t
    x2 = t^2 + t
    x3 = sqrt(1 - 4*t^3)
    domain = -0.3 0.3
    """
    cu = parse_curve(text)
    assert cu.ambient is Ambient.S21
    assert cu.domain == (-0.3, 0.3)
    assert len(cu.components) == 3


def test_parse_curve_file_errors():
    with pytest.raises(CurveSyntaxError):
        parse_curve("space = S31\nx1 = t\nx2 = t\nx3 = t\ndomain = 0 1\n")  # missing x4
    with pytest.raises(CurveSyntaxError):
        parse_curve("space = R31\nx1 = t\nx2 = t\nx3 = t\nx4 = t\ndomain = 0 1\n")
    with pytest.raises(CurveSyntaxError):
        parse_curve("space = R31\nx1 = t\nx2 = t\nx3 = t\ndomain = 1 0\n")
    with pytest.raises(CurveSyntaxError):
        parse_curve("space = H2\nx1 = t\nx2 = t\nx3 = t\ndomain = 0 1\n")


def test_jet_simple_derivatives():
    cu = curve(["t^2", "sin(t)", "1"], "R31", (-1.0, 4.0))
    jets = eval_jet(cu, 3.0, 1)
    assert jets[0].d(1) == pytest.approx(6.0, abs=1e-12)
    jets = eval_jet(cu, 0.0, 5)
    assert jets[1].d(5) == pytest.approx(1.0, abs=1e-12)  # d^5 sin / dt^5 = cos


def test_jet_sqrt_chain():
    cu = curve(["sqrt(1 - 4*t^3)", "0", "0"], "R31", (-0.3, 0.3))
    jets = eval_jet(cu, 0.0, 1)
    assert jets[0].d(1) == pytest.approx(0.0, abs=1e-15)
    # -6 t^2 / sqrt(1-4t^3) at t = 0.2
    jets = eval_jet(cu, 0.2, 1)
    assert jets[0].d(1) == pytest.approx(-6 * 0.04 / math.sqrt(1 - 4 * 0.008), rel=1e-12)


def test_jet_order_cap():
    cu = curve(["t", "t", "t"], "R31", (0.0, 1.0))
    with pytest.raises(ValueError):
        eval_jet(cu, 0.5, 7)


def test_domain_enforced():
    cu = curve(["t", "t", "t"], "R31", (0.0, 1.0))
    with pytest.raises(ValueError):
        eval_jet(cu, 2.0, 1)


def test_eval_domain_error_names_subexpression():
    cu = curve(["sqrt(1 - 4*t^3)", "0", "0"], "R31", (-1.0, 1.0))
    with pytest.raises(EvalDomainError) as err:
        eval_jet(cu, 0.9, 2)  # 1 - 4 t^3 < 0
    assert "sqrt" in str(err.value)
    cu = curve(["1/t", "0", "0"], "R31", (-1.0, 1.0))
    with pytest.raises(EvalDomainError) as err:
        eval_jet(cu, 0.0, 1)
    assert "division" in str(err.value)


coeffs = st.lists(
    st.floats(min_value=-3.0, max_value=3.0, allow_nan=False), min_size=1, max_size=6
)


@given(coeffs, st.floats(min_value=-0.9, max_value=0.9))
def test_polynomial_jets_exact(cs, t0):
    text = " + ".join(f"({c!r})*t^{i}" for i, c in enumerate(cs)) or "0"
    cu = curve([text, "0", "0"], "R31", (-1.0, 1.0))
    jets = eval_jet(cu, t0, 5)
    poly = np.polynomial.Polynomial(cs)
    for k in range(6):
        expected = poly.deriv(k)(t0) if k else poly(t0)
        assert jets[0].d(k) == pytest.approx(expected, rel=1e-9, abs=1e-9)


@given(coeffs, st.floats(min_value=-0.8, max_value=0.8))
def test_jets_match_central_differences(cs, t0):
    """5-point stencil cross-check of the first two derivative orders."""
    text = " + ".join(f"({c!r})*t^{i}" for i, c in enumerate(cs)) or "0"
    cu = curve([text, "0", "0"], "R31", (-2.0, 2.0))
    jets = eval_jet(cu, t0, 2)
    h = 1e-3
    f = lambda u: float(position(cu, u)[0])
    d1 = (f(t0 - 2 * h) - 8 * f(t0 - h) + 8 * f(t0 + h) - f(t0 + 2 * h)) / (12 * h)
    d2 = (-f(t0 - 2 * h) + 16 * f(t0 - h) - 30 * f(t0) + 16 * f(t0 + h) - f(t0 + 2 * h)) / (12 * h * h)
    scale = max(1.0, *(abs(c) for c in cs))
    assert jets[0].d(1) == pytest.approx(d1, rel=1e-6, abs=1e-6 * scale)
    assert jets[0].d(2) == pytest.approx(d2, rel=1e-6, abs=1e-5 * scale)


def test_jet_linearity():
    f = curve(["sin(t) + t^2", "0", "0"], "R31", (-1.0, 1.0))
    g = curve(["cosh(t)*t", "0", "0"], "R31", (-1.0, 1.0))
    combo = curve(["2*(sin(t) + t^2) - 3*(cosh(t)*t)", "0", "0"], "R31", (-1.0, 1.0))
    jf = eval_jet(f, 0.4, 5)[0]
    jg = eval_jet(g, 0.4, 5)[0]
    jc = eval_jet(combo, 0.4, 5)[0]
    for k in range(6):
        assert jc.d(k) == pytest.approx(2 * jf.d(k) - 3 * jg.d(k), rel=1e-12, abs=1e-12)


_expr_leaf = st.one_of(
    st.just(Var()),
    st.floats(min_value=0.0, max_value=9.0, allow_nan=False).map(Const),
)


def _expr_nodes(children):
    return st.one_of(
        st.tuples(st.sampled_from("+-*/"), children, children).map(lambda p: BinOp(*p)),
        children.map(Neg),
        st.tuples(children, st.sampled_from([2.0, 3.0, -1.0, 0.5])).map(lambda p: Pow(*p)),
        st.tuples(st.sampled_from(["sin", "cos", "sinh", "cosh", "exp", "sqrt"]), children).map(
            lambda p: Call(*p)
        ),
    )


expr_strategy = st.recursive(_expr_leaf, _expr_nodes, max_leaves=12)


@given(expr_strategy)
def test_pretty_roundtrip(e):
    assert parse_expr(pretty(e)) == e


def test_substitute_reparametrization():
    e = parse_expr("sin(t) + t^2")
    phi = parse_expr("t + t^3/10")
    composed = substitute(e, phi)
    cu = curve([pretty(composed), "0", "0"], "R31", (-1.0, 1.0))
    u = 0.3
    val = position(cu, u)[0]
    assert val == pytest.approx(math.sin(u + u**3 / 10) + (u + u**3 / 10) ** 2, rel=1e-14)


def test_validate_on_sphere(s21_example):
    report = validate_on_sphere(s21_example)
    assert report.ok and report.worst_residual <= 1e-12

    off = curve(["t", "0", "1"], "S21", (-0.5, 0.5))
    assert not validate_on_sphere(off).ok

    circ = curve(["0", "cos(t)", "sin(t)"], "S21", (-1.0, 1.0))
    assert validate_on_sphere(circ).ok


def test_curvedef_component_count():
    with pytest.raises(CurveSyntaxError):
        CurveDef((Var(), Var()), Ambient.R31, (0.0, 1.0))
