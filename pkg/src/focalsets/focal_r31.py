"""Focal surface and bifurcation set of curves in R^3_1.

Two charts cover the bifurcation set: the Frenet chart (valid on
spacelike/timelike arcs away from the guard band) and the lightlike
chart built from N = gamma' ^ gamma'' and B = gamma' ^ N, which stays
well conditioned through Omega-certified lightlike points.  They describe
the same point set in overlapping windows, in different coordinates.

Degenerate and Undefined are distinct outcomes: Undefined means the chart
partials are parallel (no tangent plane), Degenerate means the plane exists
but its induced metric is singular (an LD point).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .causal import GUARD_SCALE
from .curvedsl import CurveDef, component_taylor
from .errors import GeometryError, UndefinedCuspidalError
from .frames import frame_r31
from .minkowski import (
    DEFAULT_TOL,
    euclid_sq,
    is_relative_zero,
    mdot,
    wedge3,
)
from .singularities import SingClass, classify

MU0_EXCLUSION = 1e-3  # exclusion-ball radius around mu0, relative to |mu0|


class MetricClass(enum.Enum):
    RIEMANNIAN = "riemannian"
    LORENTZIAN = "lorentzian"
    DEGENERATE = "degenerate"
    UNDEFINED = "undefined"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ChartPoint:
    chart: str  # "frenet" | "lightlike"
    t: float
    mu: float


@dataclass(frozen=True)
class FocalSample:
    point: np.ndarray
    chart: ChartPoint
    gram: np.ndarray | None  # 2x2 induced metric in the chart basis
    metric_class: MetricClass
    sing_class: SingClass
    lightlike_directions: tuple  # ambient kernel directions when Degenerate


@dataclass(frozen=True)
class CuspidalSample:
    point: np.ndarray
    s: float
    mu_of_s: float


def _normalize_max_component(v):
    i = int(np.argmax(np.abs(v)))
    return v / v[i]


def tangent_metric(p1, p2, tol: float = DEFAULT_TOL):
    """Classify the plane spanned by two chart partials.

    Returns (gram, MetricClass, kernel_directions).  gram is None and the
    class is UNDEFINED when the partials are parallel (rank < 2); kernel
    directions (normalized to max-component 1) are reported only for the
    DEGENERATE class.
    """
    p1 = np.asarray(p1, float)
    p2 = np.asarray(p2, float)
    # rank test on the Euclidean Gram matrix: rank < 2 iff the singular-value
    # ratio of the stacked partials collapses (captures zero partials too)
    e1, e2 = float(euclid_sq(p1)), float(euclid_sq(p2))
    dot_e = float(np.sum(p1 * p2))
    sv = np.linalg.eigvalsh(np.array([[e1, dot_e], [dot_e, e2]]))
    if sv[0] <= tol * max(sv[1], 1.0e-300):
        return None, MetricClass.UNDEFINED, ()

    g11 = float(mdot(p1, p1))
    g12 = float(mdot(p1, p2))
    g22 = float(mdot(p2, p2))
    gram = np.array([[g11, g12], [g12, g22]])
    det_g = g11 * g22 - g12 * g12
    scale = max(1.0, abs(g11 * g22), g12 * g12)
    if abs(det_g) <= tol * scale:
        evals, evecs = np.linalg.eigh(gram)
        dirs = []
        for i in range(2):
            if abs(evals[i]) <= math.sqrt(tol * scale):
                c1, c2 = evecs[0, i], evecs[1, i]
                dirs.append(_normalize_max_component(c1 * p1 + c2 * p2))
        return gram, MetricClass.DEGENERATE, tuple(dirs)
    lo, hi = np.linalg.eigvalsh(gram)
    if lo > 0:
        return gram, MetricClass.RIEMANNIAN, ()
    if hi < 0:
        raise GeometryError("negative-definite tangent metric; impossible in a Lorentzian ambient")
    return gram, MetricClass.LORENTZIAN, ()


def focal_surface(cu: CurveDef, t: float, mu: float, tol: float = DEFAULT_TOL,
                  guard: float = GUARD_SCALE) -> FocalSample:
    """Frenet-chart focal surface gamma + (eps/(delta k)) n + mu b."""
    fr = frame_r31(cu, t, tol, guard)
    point = fr.gamma + (fr.eps / (fr.delta * fr.k)) * fr.n + mu * fr.b
    # chart partials in arc length: d/ds and d/dmu of the chart map
    b_s = (mu * fr.tau - fr.eps * fr.delta * fr.kp / fr.k**2) * fr.n \
        + (fr.tau / (fr.delta * fr.k)) * fr.b
    b_mu = fr.b
    gram, metric, dirs = tangent_metric(b_s, b_mu, tol)
    sing = classify(cu, t, point, tol)
    return FocalSample(point, ChartPoint("frenet", t, mu), gram, metric, sing, dirs)


def cuspidal_curve(cu: CurveDef, t: float, tol: float = DEFAULT_TOL,
                   guard: float = GUARD_SCALE) -> CuspidalSample:
    """Point of the cuspidal curve: mu(s) = k'/(eps delta k^2 tau)."""
    fr = frame_r31(cu, t, tol, guard)
    if is_relative_zero(fr.tau, 1.0, tol):
        raise UndefinedCuspidalError(f"torsion ~ 0 at t={t}; cuspidal curve undefined")
    mu_s = fr.kp / (fr.eps * fr.delta * fr.k**2 * fr.tau)
    point = fr.gamma + (fr.eps / (fr.delta * fr.k)) * fr.n + mu_s * fr.b
    return CuspidalSample(point, t, mu_s)


def _tjets3(cu: CurveDef, t: float):
    c = component_taylor(cu, float(t), 3)
    return c[0], c[1], 2.0 * c[2], 6.0 * c[3]


def bif_lightlike_chart(cu: CurveDef, t: float, mu: float, tol: float = DEFAULT_TOL) -> FocalSample:
    """Lightlike-neighbourhood chart gamma - mu N - (q/<N,N>) B of the bifurcation set.

    Valid wherever N = gamma' ^ gamma'' is non-lightlike, which Omega
    guarantees near certified lightlike points.
    """
    g0, g1, g2, g3 = _tjets3(cu, t)
    n_vec = wedge3(g1, g2)
    nn = float(mdot(n_vec, n_vec))
    if is_relative_zero(nn, float(euclid_sq(n_vec)), tol):
        raise GeometryError(
            f"<N,N> ~ 0 at t={t}: non-Omega configuration, lightlike chart undefined"
        )
    b_vec = wedge3(g1, n_vec)
    q = float(mdot(g1, g1))
    lam = q / nn
    point = g0 - mu * n_vec - lam * b_vec

    np_vec = wedge3(g1, g3)
    bp_vec = wedge3(g2, n_vec) + wedge3(g1, np_vec)
    lamp = (2.0 * float(mdot(g1, g2)) * nn - 2.0 * q * float(mdot(n_vec, np_vec))) / nn**2
    d_t = g1 - mu * np_vec - lamp * b_vec - lam * bp_vec
    d_mu = -n_vec
    gram, metric, dirs = tangent_metric(d_t, d_mu, tol)
    sing = classify(cu, t, point, tol)
    return FocalSample(point, ChartPoint("lightlike", t, mu), gram, metric, sing, dirs)


def mu0(cu: CurveDef, t0: float, tol: float = DEFAULT_TOL) -> float:
    """The exceptional mu at a lightlike point: -3<g', g''> / <g' ^ g'', g'''>.

    At mu0 the chart partials become parallel and f_v jumps to A_{>=3}.
    """
    g0, g1, g2, g3 = _tjets3(cu, t0)
    denom = float(mdot(wedge3(g1, g2), g3))
    scale = float(np.sqrt(euclid_sq(wedge3(g1, g2)) * euclid_sq(g3)))
    if is_relative_zero(denom, scale, tol):
        raise GeometryError(
            f"<g' ^ g'', g'''> ~ 0 at t={t0}: degenerate torsion, mu0 undefined"
        )
    return -3.0 * float(mdot(g1, g2)) / denom


def ld_extract(cu: CurveDef, t0: float, mu_range: tuple[float, float],
               resolution: int = 101, tol: float = DEFAULT_TOL) -> list[FocalSample]:
    """Sample the locus of degeneracy B(t0, mu) along the normal line at a
    lightlike point, excluding a small ball around mu0."""
    m0 = mu0(cu, t0, tol)
    radius = MU0_EXCLUSION * abs(m0)
    mus = [m for m in np.linspace(mu_range[0], mu_range[1], resolution)
           if abs(m - m0) > radius]
    if not mus:
        raise GeometryError("mu_range lies entirely inside the mu0 exclusion ball")
    samples = [bif_lightlike_chart(cu, t0, float(m), tol) for m in mus]
    return [s for s in samples if s.metric_class is MetricClass.DEGENERATE]


def line_fit_residual(points) -> float:
    """Max Euclidean distance from the points to their best-fit line."""
    pts = np.asarray(points, float)
    centre = pts.mean(axis=0)
    centred = pts - centre
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    axis = vt[0]
    proj = centred - np.outer(centred @ axis, axis)
    return float(np.sqrt((proj**2).sum(axis=1)).max())
