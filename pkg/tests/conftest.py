import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from focalsets.curvedsl import curve

settings.register_profile(
    "numeric", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numeric")


# ---- fixture curves -------------------------------------------------------

@pytest.fixture(scope="session")
def s21_example():
    """Lightlike point at t=0 with Omega value 4; timelike then spacelike."""
    return curve(["t^2 - t", "t^2 + t", "sqrt(1 - 4*t^3)"], "S21", (-0.3, 0.3))


@pytest.fixture(scope="session")
def cubic_graph():
    """(t, t+t^2, t^3): lightlike at t=0, mu0 = -1/2."""
    return curve(["t", "t + t^2", "t^3"], "R31", (-0.5, 0.5))


@pytest.fixture(scope="session")
def timelike_fixture():
    """(2 sinh t, cosh t, t): timelike everywhere, speed^2 = -3 cosh^2 t."""
    return curve(["2*sinh(t)", "cosh(t)", "t"], "R31", (-1.0, 1.0))


@pytest.fixture(scope="session")
def helix_spacelike():
    """(sin t, 2t, cos t): spacelike everywhere, speed^2 = 3 + 2 sin^2 t."""
    return curve(["sin(t)", "2*t", "cos(t)"], "R31", (-1.2, 1.2))


@pytest.fixture(scope="session")
def hyperbola_band():
    """(cosh u, sinh u, sqrt 2) on S^2_1: unit speed, constant k_g = -sqrt 2."""
    return curve(["cosh(t)", "sinh(t)", "sqrt(2)"], "S21", (-1.0, 1.0))


@pytest.fixture(scope="session")
def circle_s21():
    """(0, cos t, sin t) on S^2_1: spacelike, k_g = 0."""
    return curve(["0", "cos(t)", "sin(t)"], "S21", (-3.0, 3.0))


@pytest.fixture(scope="session")
def wobble_s21():
    """Timelike S^2_1 curve with isolated roots of k_g'."""
    return curve(
        ["sinh(t)", "cosh(t)*cos(0.3*sin(t))", "cosh(t)*sin(0.3*sin(t))"],
        "S21",
        (-1.2, 1.2),
    )


@pytest.fixture(scope="session")
def circle_s31():
    """Timelike circle on S^3_1 with k_h = 1, tau_h = 0."""
    return curve(
        ["(1/sqrt(2))*sinh(t)", "(1/sqrt(2))*cosh(t)", "1/sqrt(2)", "0"],
        "S31",
        (-1.0, 1.0),
    )


@pytest.fixture(scope="session")
def acceptance_s31():
    """4D curve with one certified lightlike point near t = -0.1272."""
    return curve(
        ["t^2 - t", "t^2 + t", "sqrt(1 - 4*t^3)*cos(t)", "sqrt(1 - 4*t^3)*sin(t)"],
        "S31",
        (-0.35, 0.35),
    )


@pytest.fixture(scope="session")
def a4_vertex():
    """Planar curve whose distance function has an A4 point at t=0, v=(0,0,1)."""
    return curve(["0", "t", "t^2/2 + t^4/8 + t^5/10"], "R31", (-0.5, 0.5))


def mdot_np(x, y):
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    return -x[0] * y[0] + float(np.sum(x[1:] * y[1:]))
