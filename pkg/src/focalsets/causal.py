"""Causal character of a curve along its domain.

Finds and certifies lightlike points (isolated zeros of <gamma', gamma'>),
splits the domain into spacelike/timelike arcs, and converts parameter jets
to arc-length jets on non-lightlike arcs.

Arc-length machinery refuses to evaluate inside a guard band around
lightlike points (mnorm(gamma') below a fraction of its domain median);
the dedicated lightlike-neighbourhood charts take over there.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import seriesvec, taylor
from .curvedsl import CurveDef, Jet, component_taylor
from .errors import GeometryError, GuardBandError
from .minkowski import DEFAULT_TOL, CausalType, euclid_sq, is_relative_zero, mdot

GUARD_SCALE = 1e-4
SCAN_GRID = 4096
REFINE_FACTOR = 1e-13  # bisection width, relative to the domain width


def speed_sq(cu: CurveDef, t):
    """<gamma'(t), gamma'(t)>; t may be a scalar or an array."""
    c = component_taylor(cu, t, 1)
    return mdot(c[1], c[1])


def _speed_scale(gp):
    return np.maximum(1.0, euclid_sq(gp))


@functools.lru_cache(maxsize=128)
def speed_median(cu: CurveDef, samples: int = 512) -> float:
    ts = np.linspace(cu.domain[0], cu.domain[1], samples)
    gp = component_taylor(cu, ts, 1)[1]
    return float(np.median(np.sqrt(np.abs(mdot(gp, gp)))))


def check_guard(cu: CurveDef, t, guard: float = GUARD_SCALE):
    """Raise GuardBandError when mnorm(gamma'(t)) is inside the guard band."""
    gp = component_taylor(cu, t, 1)[1]
    speed = np.sqrt(np.abs(mdot(gp, gp)))
    threshold = guard * speed_median(cu)
    if np.any(speed < threshold):
        worst = float(np.min(speed))
        raise GuardBandError(
            f"t={t!r} is inside the lightlike guard band "
            f"(mnorm(gamma')={worst:.3e} < {threshold:.3e})"
        )


@dataclass(frozen=True)
class LightlikePoint:
    t_star: float
    speed_derivative: float  # d/dt <gamma', gamma'> at t_star
    omega_value: float       # <gamma'', gamma'> at t_star
    certified: bool


@dataclass(frozen=True)
class CausalArc:
    interval: tuple[float, float]
    kind: CausalType


def _bisect(f, lo, hi, xtol):
    flo = f(lo)
    for _ in range(200):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) != (fmid < 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _ternary_min(f, lo, hi, xtol):
    for _ in range(200):
        if hi - lo <= xtol:
            break
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def omega_value(cu: CurveDef, t0: float) -> float:
    """<gamma''(t0), gamma'(t0)>, the transversality value at a lightlike point."""
    c = component_taylor(cu, float(t0), 2)
    return float(mdot(2.0 * c[2], c[1]))


@dataclass(frozen=True)
class OmegaCheck:
    value: float
    satisfied: bool


def omega_check(cu: CurveDef, t0: float, tol: float = DEFAULT_TOL) -> OmegaCheck:
    c = component_taylor(cu, float(t0), 2)
    gp, gpp = c[1], 2.0 * c[2]
    value = float(mdot(gpp, gp))
    scale = max(1.0, float(np.sqrt(euclid_sq(gpp) * euclid_sq(gp))))
    return OmegaCheck(value, abs(value) > tol * scale)


def find_lightlike_points(
    cu: CurveDef, tol: float = DEFAULT_TOL, grid: int = SCAN_GRID
) -> list[LightlikePoint]:
    """Scan for zeros of <gamma', gamma'>, refine by bisection, certify by Omega.

    Transverse zeros (sign changes) with a nonzero Omega value are certified;
    tangential dips below tolerance are reported uncertified.
    """
    a, b = cu.domain
    xtol = REFINE_FACTOR * (b - a)
    ts = np.linspace(a, b, grid)
    c = component_taylor(cu, ts, 1)
    q = mdot(c[1], c[1])
    scale = _speed_scale(c[1])
    near_zero = np.abs(q) <= tol * scale

    f = lambda t: float(speed_sq(cu, t))

    roots: list[tuple[float, bool]] = []  # (t, transverse)
    for i in range(grid - 1):
        if near_zero[i] or near_zero[i + 1]:
            continue
        if (q[i] < 0) != (q[i + 1] < 0):
            roots.append((_bisect(f, float(ts[i]), float(ts[i + 1]), xtol), True))

    # clusters of grid points with |q| below tolerance (tangential candidates)
    i = 0
    while i < grid:
        if not near_zero[i]:
            i += 1
            continue
        j = i
        while j + 1 < grid and near_zero[j + 1]:
            j += 1
        lo = float(ts[max(i - 1, 0)])
        hi = float(ts[min(j + 1, grid - 1)])
        flo, fhi = f(lo), f(hi)
        if flo != 0.0 and fhi != 0.0 and (flo < 0) != (fhi < 0):
            roots.append((_bisect(f, lo, hi, xtol), True))
        else:
            roots.append((_ternary_min(lambda t: abs(f(t)), lo, hi, xtol), False))
        i = j + 1

    # tangential zeros between grid points: local minima of |q| below the
    # grid-resolution bound (a zero between nodes dips beneath ~|second
    # difference|/8); refine, then keep only genuine lightlike minima
    absq = np.abs(q)
    for i in range(1, grid - 1):
        if near_zero[i - 1] or near_zero[i] or near_zero[i + 1]:
            continue
        if not (absq[i] <= absq[i - 1] and absq[i] <= absq[i + 1]):
            continue
        if (q[i - 1] < 0) != (q[i + 1] < 0):
            continue  # transverse, already bracketed above
        d2 = abs(q[i - 1] - 2 * q[i] + q[i + 1])
        if absq[i] > max(tol * scale[i], 0.76 * d2):
            continue
        t_hat = _ternary_min(lambda t: abs(f(t)), float(ts[i - 1]), float(ts[i + 1]), xtol)
        gp = component_taylor(cu, t_hat, 1)[1]
        if abs(f(t_hat)) <= tol * float(_speed_scale(gp)):
            roots.append((t_hat, False))

    roots.sort()
    merged: list[tuple[float, bool]] = []
    for t0, transverse in roots:
        if merged and abs(t0 - merged[-1][0]) <= 10 * xtol:
            prev_t, prev_tr = merged[-1]
            merged[-1] = (prev_t, prev_tr or transverse)
        else:
            merged.append((t0, transverse))

    out = []
    for t0, transverse in merged:
        check = omega_check(cu, t0, tol)
        out.append(
            LightlikePoint(
                t_star=t0,
                speed_derivative=2.0 * check.value,
                omega_value=check.value,
                certified=bool(transverse and check.satisfied),
            )
        )
    return out


def split_arcs(cu: CurveDef, points: list[LightlikePoint], tol: float = DEFAULT_TOL) -> list[CausalArc]:
    """Open arcs between consecutive lightlike points, tagged by midpoint sign."""
    a, b = cu.domain
    cuts = [a] + [p.t_star for p in points] + [b]
    arcs = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        c = component_taylor(cu, mid, 1)
        q = float(mdot(c[1], c[1]))
        if is_relative_zero(q, float(_speed_scale(c[1])), tol):
            raise GeometryError(
                f"arc midpoint t={mid} is itself within tolerance of lightlike; "
                "refine the lightlike-point list first"
            )
        kind = CausalType.SPACELIKE if q > 0 else CausalType.TIMELIKE
        arcs.append(CausalArc((lo, hi), kind))
    return arcs


def arclength_derivs(cu: CurveDef, t, order: int, guard: float = GUARD_SCALE) -> np.ndarray:
    """Arc-length derivatives d^k gamma / ds^k, k = 0..order.

    Shape (order+1, ncomp) for scalar t, (order+1, ncomp, N) for an array.
    Conversion is exact: the chain rule with ds/dt = mnorm(gamma') is applied
    through truncated Taylor arithmetic, not finite differences.
    """
    if order < 0 or order > 5:
        raise ValueError("arc-length jets support order 0..5")
    check_guard(cu, t, guard)
    base = component_taylor(cu, t, max(order, 1))
    gp = taylor.deriv(base)
    q = seriesvec.mdot(gp, gp)
    eps = np.where(q[0] > 0, 1.0, -1.0)
    if np.ndim(q[0]) and not (np.all(q[0] > 0) or np.all(q[0] < 0)):
        raise GeometryError("batched arc-length jets need a single causal kind per batch")
    sigma = taylor.sqrt(eps * q)
    out = np.empty((order + 1,) + base.shape[1:])
    out[0] = base[0]
    X = base
    for k in range(1, order + 1):
        Xd = taylor.deriv(X)
        X = taylor.div(Xd, sigma[: Xd.shape[0]])
        out[k] = X[0]
    return out


def arclength_jet(cu: CurveDef, t: float, order: int, guard: float = GUARD_SCALE) -> list[Jet]:
    """Per-component jets in the arc-length parameter at the point gamma(t)."""
    derivs = arclength_derivs(cu, t, order, guard)
    return [Jet(order, derivs[:, i].copy()) for i in range(derivs.shape[1])]
