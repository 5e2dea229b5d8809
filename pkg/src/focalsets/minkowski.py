"""Minkowski linear algebra with signature (-, +, + [, +]).

Vectors are plain numpy arrays whose *first* axis holds the components;
index 0 is the timelike slot.  Extra trailing axes broadcast, so a batch
of vectors evaluates in one call.  Only dimensions 3 and 4 are admitted.
"""

from __future__ import annotations

import enum

import numpy as np

DEFAULT_TOL = 1e-10


class CausalType(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    def __str__(self):
        return self.value


def is_relative_zero(value, scale, tol=DEFAULT_TOL):
    """Scale-aware zero test: |value| <= tol * max(1, scale)."""
    return abs(value) <= tol * max(1.0, scale)


def as_mvector(x, dim=None):
    """Validate and return x as a float array with 3 or 4 components."""
    v = np.asarray(x, dtype=float)
    if v.ndim == 0 or v.shape[0] not in (3, 4):
        raise ValueError(f"expected a 3- or 4-component vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {v.shape[0]}")
    return v


def _pair(x, y):
    x = as_mvector(x)
    y = as_mvector(y, dim=x.shape[0])
    return x, y


def mdot(x, y):
    """Pseudo-scalar product -x1*y1 + x2*y2 + ... (index 1 timelike)."""
    x, y = _pair(x, y)
    return -x[0] * y[0] + np.sum(x[1:] * y[1:], axis=0)


def mnorm(x):
    """Minkowski norm sqrt(|<x, x>|); zero exactly on lightlike vectors."""
    return np.sqrt(np.abs(mdot(x, x)))


def euclid_sq(x):
    x = as_mvector(x)
    return np.sum(x * x, axis=0)


def causal_type(x, tol=DEFAULT_TOL):
    """Causal trichotomy of a single vector, with a scale-aware lightlike band."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    x = as_mvector(x)
    q = float(mdot(x, x))
    if is_relative_zero(q, float(euclid_sq(x)), tol):
        return CausalType.LIGHTLIKE
    return CausalType.SPACELIKE if q > 0 else CausalType.TIMELIKE


def wedge3(x, y):
    """Pseudo vector product in R^3_1: determinant with first row (-e1, e2, e3).

    The result is mdot-orthogonal to both arguments.
    """
    x, y = _pair(x, y)
    if x.shape[0] != 3:
        raise ValueError("wedge3 requires 3-component vectors")
    return np.stack(
        [
            -(x[1] * y[2] - x[2] * y[1]),
            -(x[0] * y[2] - x[2] * y[0]),
            x[0] * y[1] - x[1] * y[0],
        ]
    )


def _minor3(r0, r1, r2, cols):
    a, b, c = cols
    return (
        r0[a] * (r1[b] * r2[c] - r1[c] * r2[b])
        - r0[b] * (r1[a] * r2[c] - r1[c] * r2[a])
        + r0[c] * (r1[a] * r2[b] - r1[b] * r2[a])
    )


def wedge4(x, y, z):
    """Triple pseudo vector product in R^4_1: formal determinant with first
    row (-e1, e2, e3, e4) and rows x, y, z.  mdot-orthogonal to all three."""
    x = as_mvector(x, dim=4)
    y = as_mvector(y, dim=4)
    z = as_mvector(z, dim=4)
    return np.stack(
        [
            -_minor3(x, y, z, (1, 2, 3)),
            -_minor3(x, y, z, (0, 2, 3)),
            _minor3(x, y, z, (0, 1, 3)),
            -_minor3(x, y, z, (0, 1, 2)),
        ]
    )


def det3(a, b, c):
    """Ordinary (Euclidean-sign) determinant of three stacked 3-vectors."""
    a = as_mvector(a, dim=3)
    b = as_mvector(b, dim=3)
    c = as_mvector(c, dim=3)
    return _minor3(a, b, c, (0, 1, 2))


def det4(a, b, c, d):
    """Ordinary (Euclidean-sign) determinant of four stacked 4-vectors."""
    a = as_mvector(a, dim=4)
    b = as_mvector(b, dim=4)
    c = as_mvector(c, dim=4)
    d = as_mvector(d, dim=4)
    return (
        a[0] * _minor3(b, c, d, (1, 2, 3))
        - a[1] * _minor3(b, c, d, (0, 2, 3))
        + a[2] * _minor3(b, c, d, (0, 1, 3))
        - a[3] * _minor3(b, c, d, (0, 1, 2))
    )
