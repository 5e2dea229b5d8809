"""Truncated Taylor-series arithmetic.

A series is a numpy array whose first axis indexes the Taylor coefficient:
``a[k] = f^(k)(t0) / k!``.  Trailing axes broadcast, so batches of series
(e.g. one per grid point) go through the same kernels.  Orders stay small
(<= 7 coefficients), so the classical O(n^2) recurrences are used as-is.

Domain failures (sqrt of a non-positive radicand, log of a non-positive
argument, division by zero) raise EvalDomainError; callers annotate the
offending subexpression.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EvalDomainError


def constant(value, order, batch_shape=()):
    c = np.zeros((order + 1,) + tuple(batch_shape))
    c[0] = value
    return c


def variable(t, order):
    """Series of the identity map at t; t may be a scalar or a batch array."""
    t = np.asarray(t, dtype=float)
    c = np.zeros((order + 1,) + t.shape)
    c[0] = t
    if order >= 1:
        c[1] = 1.0
    return c


def _out_shape(a, b):
    return (a.shape[0],) + np.broadcast_shapes(a.shape[1:], b.shape[1:])


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def mul(a, b):
    m = a.shape[0]
    out = np.zeros(_out_shape(a, b))
    for k in range(m):
        for j in range(k + 1):
            out[k] += a[j] * b[k - j]
    return out


def div(a, b):
    m = a.shape[0]
    if np.any(b[0] == 0.0):
        raise EvalDomainError("division by zero")
    out = np.zeros(_out_shape(a, b))
    for k in range(m):
        acc = a[k] - sum(b[j] * out[k - j] for j in range(1, k + 1))
        out[k] = acc / b[0]
    return out


def sqrt(a):
    m = a.shape[0]
    if np.any(a[0] <= 0.0):
        raise EvalDomainError("sqrt of a non-positive radicand")
    out = np.zeros(a.shape)
    out[0] = np.sqrt(a[0])
    for k in range(1, m):
        acc = a[k] - sum(out[j] * out[k - j] for j in range(1, k))
        out[k] = acc / (2.0 * out[0])
    return out


def exp(a):
    m = a.shape[0]
    out = np.zeros(a.shape)
    out[0] = np.exp(a[0])
    for k in range(1, m):
        out[k] = sum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def log(a):
    m = a.shape[0]
    if np.any(a[0] <= 0.0):
        raise EvalDomainError("log of a non-positive argument")
    out = np.zeros(a.shape)
    out[0] = np.log(a[0])
    for k in range(1, m):
        acc = k * a[k] - sum(j * out[j] * a[k - j] for j in range(1, k))
        out[k] = acc / (k * a[0])
    return out


def sin_cos(a):
    m = a.shape[0]
    s = np.zeros(a.shape)
    c = np.zeros(a.shape)
    s[0] = np.sin(a[0])
    c[0] = np.cos(a[0])
    for k in range(1, m):
        s[k] = sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k
        c[k] = -sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
    return s, c


def sinh_cosh(a):
    m = a.shape[0]
    s = np.zeros(a.shape)
    c = np.zeros(a.shape)
    s[0] = np.sinh(a[0])
    c[0] = np.cosh(a[0])
    for k in range(1, m):
        s[k] = sum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k
        c[k] = sum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
    return s, c


def powi(a, n):
    """Integer power by repeated series multiplication (exact for polynomials)."""
    if n == 0:
        return constant(1.0, a.shape[0] - 1, a.shape[1:])
    if n < 0:
        return div(constant(1.0, a.shape[0] - 1, ()), powi(a, -n))
    out = a
    for _ in range(n - 1):
        out = mul(out, a)
    return out


def powf(a, r):
    """Real power routed through exp/log; requires a positive base."""
    return exp(log(a) * r)


def deriv(a):
    """Series of the derivative; one order shorter."""
    m = a.shape[0]
    if m < 2:
        return np.zeros((1,) + a.shape[1:])
    k = np.arange(1, m, dtype=float).reshape((m - 1,) + (1,) * (a.ndim - 1))
    return a[1:] * k


def derivatives(a):
    """Convert Taylor coefficients to plain derivative values (scale by k!)."""
    m = a.shape[0]
    f = np.array([math.factorial(k) for k in range(m)], dtype=float)
    return a * f.reshape((m,) + (1,) * (a.ndim - 1))


def truncate(a, order):
    return a[: order + 1]
