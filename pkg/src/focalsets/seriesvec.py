"""Minkowski vector operations lifted to Taylor-series coefficients.

A vector series has shape (m, ncomp[, batch]): the first axis is the Taylor
order, the second the ambient component.  These kernels let whole geometric
constructions (wedges, normalizations, chart maps) be evaluated together
with their exact first derivatives in the curve parameter.
"""

from __future__ import annotations

import numpy as np

from . import taylor


def mdot(a, b):
    """Pseudo-scalar product of two vector series; scalar series result."""
    out = -taylor.mul(a[:, 0], b[:, 0])
    for i in range(1, a.shape[1]):
        out = out + taylor.mul(a[:, i], b[:, i])
    return out


def scale_vec(s, v):
    """Scalar series times vector series."""
    return np.stack([taylor.mul(s, v[:, i]) for i in range(v.shape[1])], axis=1)


def wedge3(x, y):
    m = taylor.mul
    return np.stack(
        [
            -(m(x[:, 1], y[:, 2]) - m(x[:, 2], y[:, 1])),
            -(m(x[:, 0], y[:, 2]) - m(x[:, 2], y[:, 0])),
            m(x[:, 0], y[:, 1]) - m(x[:, 1], y[:, 0]),
        ],
        axis=1,
    )


def _minor3(r0, r1, r2, cols):
    m = taylor.mul
    a, b, c = cols
    return (
        m(r0[:, a], m(r1[:, b], r2[:, c]) - m(r1[:, c], r2[:, b]))
        - m(r0[:, b], m(r1[:, a], r2[:, c]) - m(r1[:, c], r2[:, a]))
        + m(r0[:, c], m(r1[:, a], r2[:, b]) - m(r1[:, b], r2[:, a]))
    )


def wedge4(x, y, z):
    return np.stack(
        [
            -_minor3(x, y, z, (1, 2, 3)),
            -_minor3(x, y, z, (0, 2, 3)),
            _minor3(x, y, z, (0, 1, 3)),
            -_minor3(x, y, z, (0, 1, 2)),
        ],
        axis=1,
    )


def constant_vec(v, order):
    """Vector series of a constant ambient vector."""
    v = np.asarray(v, float)
    out = np.zeros((order + 1, v.shape[0]))
    out[0] = v
    return out
