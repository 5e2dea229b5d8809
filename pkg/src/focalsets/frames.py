"""Frenet-type frames per ambient space, built pointwise from arc-length jets.

Frames are never propagated along the curve; every call stands alone, so
bulk evaluation parallelises trivially and there is no frame-dragging state.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .causal import GUARD_SCALE, arclength_derivs, speed_sq
from .curvedsl import Ambient, CurveDef, validate_on_sphere
from .errors import DegenerateFrameError, GeometryError, GuardBandError
from .minkowski import (
    DEFAULT_TOL,
    CausalType,
    det4,
    det3,
    euclid_sq,
    is_relative_zero,
    mdot,
    mnorm,
    wedge3,
    wedge4,
)

TAU_CROSS_TOL = 1e-6  # relative mismatch between torsion extraction routes


@dataclass(frozen=True)
class FrameR31:
    gamma: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    k: float
    tau: float
    kp: float  # dk/ds
    eps: int
    delta: int
    tau_cross_residual: float  # relative gap between jet and FD torsion routes

    @property
    def tau_flagged(self):
        return math.isfinite(self.tau_cross_residual) and self.tau_cross_residual > TAU_CROSS_TOL


@dataclass(frozen=True)
class FrameS21:
    gamma: np.ndarray
    t: np.ndarray
    n: np.ndarray
    kg: float
    kgp: float  # dk_g/ds
    eps: int
    delta: int


@dataclass(frozen=True)
class FrameS31:
    gamma: np.ndarray
    t: np.ndarray
    n: np.ndarray
    e: np.ndarray
    variant: CausalType  # SPACELIKE -> (k_g, tau_g); TIMELIKE -> (k_h, tau_h)
    k: float
    tau: float
    kp: float
    delta: int  # sign of <n, n>; +1 on timelike arcs


def _sign(x):
    return 1 if x > 0 else -1


@functools.lru_cache(maxsize=128)
def _sphere_checked(cu: CurveDef):
    report = validate_on_sphere(cu)
    if not report.ok:
        raise GeometryError(
            f"curve is not on the unit de Sitter sphere: residual "
            f"{report.worst_residual:.3e} at t={report.worst_t}"
        )
    return True


def _require_ambient(cu: CurveDef, ambient: Ambient):
    if cu.ambient is not ambient:
        raise ValueError(f"expected a {ambient.value} curve, got {cu.ambient.value}")
    if ambient.on_sphere:
        _sphere_checked(cu)


def _unit_normal(raw, tol):
    ksq = float(mdot(raw, raw))
    if is_relative_zero(ksq, float(euclid_sq(raw)), tol):
        raise DegenerateFrameError(
            "normal direction is lightlike or the curvature vanishes; "
            "no Frenet frame here"
        )
    k = math.sqrt(abs(ksq))
    return raw / k, k, _sign(ksq)


def _binormal_at(cu, u, guard):
    d = arclength_derivs(cu, u, 2, guard)
    n, _, _ = _unit_normal(d[2], DEFAULT_TOL)
    return wedge3(d[1], n)


def _tau_fd_residual(cu, t, tau, n, delta, guard):
    """Cross-validate tau against <b', n>/<n,n> with b' from finite differences."""
    a, b = cu.domain
    h = min(2e-4 * (b - a), (t - a) / 3.0, (b - t) / 3.0)
    if h < 1e-9 * (b - a):
        return float("nan")
    try:
        vals = [_binormal_at(cu, u, guard) for u in (t - 2 * h, t - h, t + h, t + 2 * h)]
    except (GuardBandError, DegenerateFrameError):
        return float("nan")
    db_dt = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
    sigma = math.sqrt(abs(float(speed_sq(cu, t))))
    tau_fd = delta * float(mdot(db_dt / sigma, n))
    return abs(tau_fd - tau) / max(1.0, abs(tau))


def frame_r31(cu: CurveDef, t: float, tol: float = DEFAULT_TOL, guard: float = GUARD_SCALE) -> FrameR31:
    """Frame {t, n, b} with curvature/torsion at gamma(t), any parametrization.

    n follows gamma_ss (never flipped for continuity), b = t ^ n, and tau is
    extracted so that the frame equations t' = k n, n' = -eps delta k t
    + eps tau b, b' = tau n hold in arc length.
    """
    if cu.dim != 3:
        raise ValueError("frame_r31 requires a 3-component curve")
    d = arclength_derivs(cu, t, 3, guard)
    g0, g1, g2, g3 = d
    eps = _sign(float(mdot(g1, g1)))
    n, k, delta = _unit_normal(g2, tol)
    b = wedge3(g1, n)
    tau = delta / (k * k) * float(det3(g2, g1, g3))
    kp = delta * float(mdot(g3, g2)) / k
    residual = _tau_fd_residual(cu, t, tau, n, delta, guard)
    return FrameR31(g0, g1, n, b, k, tau, kp, eps, delta, residual)


def frame_s21(cu: CurveDef, t: float, tol: float = DEFAULT_TOL, guard: float = GUARD_SCALE) -> FrameS21:
    """Frame {gamma, t, n = gamma ^ t} with geodesic curvature on S^2_1."""
    _require_ambient(cu, Ambient.S21)
    d = arclength_derivs(cu, t, 3, guard)
    g0, g1, g2, g3 = d
    n = wedge3(g0, g1)
    eps = _sign(float(mdot(g1, g1)))
    delta = _sign(float(mdot(n, n)))
    kg = float(mdot(g2, n))
    kgp = float(mdot(g3, n)) + float(mdot(g2, wedge3(g0, g2)))
    return FrameS21(g0, g1, n, kg, kgp, eps, delta)


def frame_s31(cu: CurveDef, t: float, tol: float = DEFAULT_TOL, guard: float = GUARD_SCALE) -> FrameS31:
    """Frame {gamma, t, n, e = gamma ^ t ^ n} on S^3_1, spacelike or timelike arc."""
    _require_ambient(cu, Ambient.S31)
    d = arclength_derivs(cu, t, 3, guard)
    g0, g1, g2, g3 = d
    eps = _sign(float(mdot(g1, g1)))
    if eps > 0:
        variant = CausalType.SPACELIKE
        raw = g2 + g0
    else:
        variant = CausalType.TIMELIKE
        raw = g2 - g0
    n, k, delta = _unit_normal(raw, tol)
    e = wedge4(g0, g1, n)
    det = float(det4(g0, g1, g2, g3))
    if variant is CausalType.SPACELIKE:
        tau = delta / (k * k) * det
        kp = delta * float(mdot(g3 + g1, raw)) / k
    else:
        tau = -det / (k * k)
        kp = float(mdot(g3 - g1, raw)) / k
    return FrameS31(g0, g1, n, e, variant, k, tau, kp, delta)


def _frame_vector_names(frame):
    # gamma is part of the moving basis on the spheres, but only a base point
    # in R^3_1
    if isinstance(frame, FrameR31):
        return ("t", "n", "b")
    if isinstance(frame, FrameS21):
        return ("gamma", "t", "n")
    return ("gamma", "t", "n", "e")


def frame_signs(frame) -> dict:
    """Minkowski signs of the frame vectors (diagnostic helper)."""
    return {name: float(mdot(getattr(frame, name), getattr(frame, name)))
            for name in _frame_vector_names(frame)}


def frame_orthogonality_residual(frame) -> float:
    """Max |<u, v>| over distinct frame vectors (should be ~0)."""
    names = _frame_vector_names(frame)
    worst = 0.0
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            worst = max(worst, abs(float(mdot(getattr(frame, a), getattr(frame, b)))))
    return worst


def unit_norm_residual(frame) -> float:
    """Max | |<v,v>| - 1 | over the frame vectors."""
    return max(abs(abs(float(mdot(getattr(frame, n), getattr(frame, n)))) - 1.0)
               for n in _frame_vector_names(frame))
