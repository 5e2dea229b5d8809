import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from focalsets.minkowski import (
    CausalType,
    causal_type,
    det4,
    euclid_sq,
    mdot,
    mnorm,
    wedge3,
    wedge4,
)

E1, E2, E3 = np.eye(3)
F1, F2, F3, F4 = np.eye(4)

components = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
vec3 = st.tuples(components, components, components).map(np.array)
vec4 = st.tuples(components, components, components, components).map(np.array)


def test_mdot_basis():
    assert mdot(E1, E1) == -1.0
    assert mdot(E2, E2) == 1.0
    assert mdot([1, 1, 0], [1, 1, 0]) == 0.0


def test_mdot_dimension_mismatch():
    with pytest.raises(ValueError):
        mdot(E1, F1)
    with pytest.raises(ValueError):
        mdot([1, 2], [3, 4])


def test_mnorm_values():
    assert mnorm(E1) == 1.0
    assert mnorm([1, 1, 0]) == 0.0
    assert mnorm([3, 5, 0]) == pytest.approx(4.0, abs=0)


def test_causal_type_examples():
    assert causal_type(E2, 1e-12) is CausalType.SPACELIKE
    assert causal_type(E1, 1e-12) is CausalType.TIMELIKE
    assert causal_type([1, 1, 1e-14], 1e-12) is CausalType.LIGHTLIKE


def test_causal_type_rejects_negative_tol():
    with pytest.raises(ValueError):
        causal_type(E1, -1.0)


def test_wedge3_basis():
    assert np.array_equal(wedge3(E2, E3), [-1, 0, 0])
    assert np.array_equal(wedge3(E1, E2), [0, 0, 1])
    assert np.array_equal(wedge3(E2, E2), [0, 0, 0])


def test_wedge4_basis():
    assert np.array_equal(wedge4(F2, F3, F4), [-1, 0, 0, 0])
    # literal first-row (-e1, e2, e3, e4) determinant; the sign here is the
    # one that keeps the S^3_1 frame equations consistent
    assert np.array_equal(wedge4(F1, F2, F3), [0, 0, 0, -1])
    assert np.array_equal(wedge4(F1, F1, F2), [0, 0, 0, 0])


def test_det4_basis():
    assert det4(F1, F2, F3, F4) == 1.0
    assert det4(F2, F1, F3, F4) == -1.0
    assert det4(F1, F1, F3, F4) == 0.0


@given(vec3, vec3)
def test_wedge3_orthogonality(x, y):
    w = wedge3(x, y)
    bound = 1e-12 * max(1.0, math.sqrt(float(euclid_sq(x) * euclid_sq(y))))
    assert abs(mdot(w, x)) <= bound
    assert abs(mdot(w, y)) <= bound


@given(vec3, vec3)
def test_wedge3_antisymmetry(x, y):
    assert np.array_equal(wedge3(x, y), -wedge3(y, x))


@given(vec4, vec4, vec4)
def test_wedge4_orthogonality(x, y, z):
    w = wedge4(x, y, z)
    scale = max(1.0, math.sqrt(float(euclid_sq(x) * euclid_sq(y))) * math.sqrt(float(euclid_sq(z))))
    bound = 1e-10 * max(1.0, scale)
    for v in (x, y, z):
        assert abs(mdot(w, v)) <= bound * max(1.0, float(np.max(np.abs(v))))


@given(vec3)
def test_mnorm_squared_matches_mdot(x):
    assert mnorm(x) ** 2 == pytest.approx(abs(mdot(x, x)), rel=1e-12, abs=1e-12)


@given(vec3, st.floats(min_value=0.1, max_value=64.0, allow_nan=False))
def test_causal_type_scaling_invariant(x, lam):
    assert causal_type(x) is causal_type(lam * x)


@given(vec4, vec4, vec4, vec4)
def test_wedge4_pairs_with_det(x, y, z, v):
    # <x^y^z, v> equals det(v, x, y, z): the defining property of the wedge
    w = wedge4(x, y, z)
    expected = float(np.linalg.det(np.array([v, x, y, z])))
    scale = max(1.0, math.prod(math.sqrt(float(euclid_sq(u))) for u in (x, y, z, v)))
    assert abs(mdot(w, v) - expected) <= 1e-10 * scale
