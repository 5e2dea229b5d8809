"""Verification suites: the paper-level properties re-run on a given curve.

Each suite returns a list of named assertions with residuals and tolerances;
a suite passes when every assertion does.  The CLI serializes the result as
JSON; the acceptance tests additionally recheck the same facts against
independent oracles (finite differences, closed-form speeds, brute scans).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .causal import find_lightlike_points, speed_sq, split_arcs
from .curvedsl import Ambient, CurveDef, component_taylor, position, validate_on_sphere
from .errors import GeometryError
from .focal_desitter import (
    beta_lambda,
    choose_normal_seed,
    s31_ld_extract,
    spherical_bif_lightlike,
    spherical_focal_curve,
    spherical_focal_speed_sq,
)
from .focal_r31 import (
    MetricClass,
    bif_lightlike_chart,
    cuspidal_curve,
    focal_surface,
    ld_extract,
    line_fit_residual,
    mu0,
)
from .frames import frame_s21
from .minkowski import CausalType, DEFAULT_TOL, euclid_sq, mdot

SUITE_NAMES = ("prop2_1", "thm3_4", "prop4_1", "thm4_3", "s21", "s31", "all")


@dataclass(frozen=True)
class Assertion:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


def _a(name, residual, tol) -> Assertion:
    return Assertion(name, float(residual), float(tol))


def _binary(name, ok) -> Assertion:
    return Assertion(name, 0.0 if ok else 1.0, 0.0)


def _certified_points(cu, tol=DEFAULT_TOL):
    return [p for p in find_lightlike_points(cu, tol) if p.certified]


def suite_prop2_1(cu: CurveDef) -> list[Assertion]:
    """Lightlike points are isolated and stable under grid refinement."""
    out = []
    pts1 = find_lightlike_points(cu, grid=4096)
    pts2 = find_lightlike_points(cu, grid=8192)
    out.append(_a("lightlike-count-stable", abs(len(pts1) - len(pts2)), 0))
    width = cu.domain[1] - cu.domain[0]
    for i, (p1, p2) in enumerate(zip(pts1, pts2)):
        out.append(_a(f"lightlike-location-stable-{i}", abs(p1.t_star - p2.t_star), 1e-9 * width))
    for i, p in enumerate(pts1):
        if p.certified:
            out.append(_binary(f"omega-nonzero-{i}", abs(p.omega_value) > 0))
    if len(pts1) >= 2:
        gaps = np.diff([p.t_star for p in pts1])
        out.append(_binary("lightlike-points-isolated", float(np.min(gaps)) > 1e-10 * width))
    return out


def suite_prop4_1(cu: CurveDef) -> list[Assertion]:
    """The distance function has A2 along B(t0, mu) except A_{>=3} at mu0."""
    out = []
    pts = _certified_points(cu)
    out.append(_binary("has-certified-lightlike-point", bool(pts)))
    if not pts:
        return out
    t0 = pts[0].t_star
    try:
        m0 = mu0(cu, t0)
        out.append(_binary("mu0-defined", True))
    except GeometryError:
        out.append(_binary("mu0-defined", False))
        return out
    out.append(_binary("mu0-nonzero", abs(m0) > 0))
    probe = 1.0 if abs(1.0 - m0) > 0.1 else -1.0
    sample = bif_lightlike_chart(cu, t0, probe)
    out.append(_binary("A2-away-from-mu0", str(sample.sing_class) == "A2"))
    at_mu0 = bif_lightlike_chart(cu, t0, m0)
    out.append(_binary("A-ge-3-at-mu0", at_mu0.sing_class.at_least(3)))
    return out


def suite_thm4_3(cu: CurveDef) -> list[Assertion]:
    """Behaviour of the bifurcation surface at a lightlike point."""
    out = []
    pts = _certified_points(cu)
    out.append(_binary("has-certified-lightlike-point", bool(pts)))
    if not pts:
        return out
    t0 = pts[0].t_star
    gamma0 = position(cu, t0)
    at_origin = bif_lightlike_chart(cu, t0, 0.0)
    out.append(_a("B(t0,0)-meets-curve", float(np.max(np.abs(at_origin.point - gamma0))), 1e-9))
    out.append(_binary("rank-2-at-(t0,0)", at_origin.gram is not None))
    out.append(_binary("degenerate-at-(t0,0)", at_origin.metric_class is MetricClass.DEGENERATE))
    if at_origin.lightlike_directions:
        d = at_origin.lightlike_directions[0]
        gp = component_taylor(cu, t0, 1)[1]
        u = d / math.sqrt(float(euclid_sq(d)))
        v = gp / math.sqrt(float(euclid_sq(gp)))
        cross = np.array([u[1] * v[2] - u[2] * v[1],
                          u[0] * v[2] - u[2] * v[0],
                          u[0] * v[1] - u[1] * v[0]])
        out.append(_a("kernel-parallel-to-tangent", float(np.max(np.abs(cross))), 1e-8))
    else:
        out.append(_binary("kernel-parallel-to-tangent", False))
    m0 = mu0(cu, t0)
    lo, hi = -0.9 * abs(m0), 0.9 * abs(m0)
    ld = ld_extract(cu, t0, (lo, hi), resolution=41)
    out.append(_binary("ld-nonempty", bool(ld)))
    if ld:
        out.append(_binary("ld-all-degenerate",
                           all(s.metric_class is MetricClass.DEGENERATE for s in ld)))
        out.append(_a("ld-colinear", line_fit_residual([s.point for s in ld]), 1e-9))
    return out


def _arc_windows(cu, margin=0.12):
    pts = find_lightlike_points(cu)
    arcs = split_arcs(cu, pts)
    windows = []
    for arc in arcs:
        lo, hi = arc.interval
        w = hi - lo
        windows.append(((lo + margin * w, hi - margin * w), arc.kind))
    return windows


def suite_thm3_4(cu: CurveDef, nt: int = 8, nmu: int = 8) -> list[Assertion]:
    """Focal-surface signature per arc kind: timelike arcs give Riemannian
    tangent planes, spacelike arcs Lorentzian, away from the cuspidal curve."""
    out = []
    exceptions = 0
    tested = 0
    for (lo, hi), kind in _arc_windows(cu):
        expected = MetricClass.RIEMANNIAN if kind is CausalType.TIMELIKE else MetricClass.LORENTZIAN
        for t in np.linspace(lo, hi, nt):
            try:
                mu_c = cuspidal_curve(cu, float(t)).mu_of_s
            except GeometryError:
                continue
            for mu in np.linspace(-1.0, 1.0, nmu):
                if abs(mu - mu_c) < 0.15 * (1.0 + abs(mu_c)):
                    continue
                try:
                    sample = focal_surface(cu, float(t), float(mu))
                except GeometryError:
                    continue
                tested += 1
                if sample.metric_class is not expected:
                    exceptions += 1
    out.append(_binary("signature-grid-nonempty", tested > 0))
    out.append(_a("signature-exceptions", exceptions, 0))
    return out


def suite_s21(cu: CurveDef) -> list[Assertion]:
    if cu.ambient is not Ambient.S21:
        return [_binary("curve-is-s21", False)]
    out = []
    report = validate_on_sphere(cu)
    out.append(_a("on-sphere-residual", report.worst_residual, 1e-9))
    pts = _certified_points(cu)
    width = cu.domain[1] - cu.domain[0]
    for i, p in enumerate(pts):
        plus, _minus = spherical_bif_lightlike(cu, p.t_star)
        gamma0 = position(cu, p.t_star)
        out.append(_a(f"alpha-meets-curve-{i}", float(np.max(np.abs(plus.point - gamma0))), 1e-8))
        worst_norm = 0.0
        degenerate_count = 0
        for dt in np.linspace(-0.05 * width, 0.05 * width, 21):
            t = p.t_star + dt
            if not (cu.domain[0] < t < cu.domain[1]):
                continue
            try:
                s_plus, _ = spherical_bif_lightlike(cu, t)
            except GeometryError:
                continue
            worst_norm = max(worst_norm, abs(float(mdot(s_plus.point, s_plus.point)) - 1.0))
            if not s_plus.sing_class.at_least(2):
                degenerate_count += 1
        out.append(_a(f"alpha-unit-norm-{i}", worst_norm, 1e-9))
        out.append(_a(f"alpha-bifurcation-property-{i}", degenerate_count, 0))
    # Frenet-side metric where the focal curve exists
    checked = 0
    worst = 0.0
    for (lo, hi), kind in _arc_windows(cu):
        for t in np.linspace(lo, hi, 7):
            try:
                fr = frame_s21(cu, float(t))
                closed = spherical_focal_speed_sq(cu, float(t))
            except GeometryError:
                continue
            if fr.kg**2 + fr.delta <= 1e-6 or abs(fr.kgp) < 1e-9:
                continue
            fd = _alpha_speed_fd(cu, float(t))
            if fd is None:
                continue
            checked += 1
            worst = max(worst, abs(fd - closed) / max(1.0, abs(closed)))
    if checked:
        out.append(_a("alpha-metric-closed-form", worst, 1e-6))
    return out


def _alpha_speed_fd(cu, t, h_rel=1e-4):
    """<alpha', alpha'> via 5-point finite differences of the plus branch."""
    a, b = cu.domain
    h = h_rel * (b - a)
    if not (a < t - 2 * h and t + 2 * h < b):
        return None
    try:
        pts = [spherical_focal_curve(cu, u).point for u in (t - 2 * h, t - h, t + h, t + 2 * h)]
    except GeometryError:
        return None
    dadt = (pts[0] - 8 * pts[1] + 8 * pts[2] - pts[3]) / (12 * h)
    sigma = math.sqrt(abs(float(speed_sq(cu, t))))
    dads = dadt / sigma
    return float(mdot(dads, dads))


def suite_s31(cu: CurveDef) -> list[Assertion]:
    if cu.ambient is not Ambient.S31:
        return [_binary("curve-is-s31", False)]
    out = []
    report = validate_on_sphere(cu)
    out.append(_a("on-sphere-residual", report.worst_residual, 1e-10))
    pts = _certified_points(cu)
    out.append(_binary("has-certified-lightlike-point", bool(pts)))
    if not pts:
        return out
    t0 = pts[0].t_star
    gamma0 = position(cu, t0)
    seed = choose_normal_seed(cu, t0)
    for mu in (1.0, -1.0):
        rep, _sample = beta_lambda(cu, t0, mu, 1, seed=seed)
        scale = max(1.0, abs(rep.a_coef), abs(rep.b_coef))
        out.append(_a(f"R-zero-at-mu={mu:+.0f}", abs(rep.r_value) / scale, 1e-8))
    rep1, sample1 = beta_lambda(cu, t0, 1.0, 1, seed=seed)
    out.append(_a("beta-zero-at-(t0,1)", abs(rep1.beta), 1e-9))
    out.append(_a("lambda-zero-at-(t0,1)", abs(rep1.lam), 1e-9))
    out.append(_a("B(t0,1)-meets-curve", float(np.max(np.abs(sample1.point - gamma0))), 1e-8))
    out.append(_a("A-plus-B-zero", abs(rep1.a_coef + rep1.b_coef),
                  1e-8 * max(1.0, abs(rep1.b_coef))))
    rep0, _ = beta_lambda(cu, t0, 0.0, 1, seed=seed)
    out.append(_binary("B-positive-at-mu0", rep0.b_coef > 0))
    ld = s31_ld_extract(cu, t0, resolution=25)
    out.append(_binary("ld-all-degenerate",
                       all(s.metric_class is MetricClass.DEGENERATE for s in ld)))
    worst_norm = max(abs(float(mdot(s.point, s.point)) - 1.0) for s in ld)
    out.append(_a("ld-unit-norm", worst_norm, 1e-9))
    return out


def run_suite(name: str, cu: CurveDef) -> list[Assertion]:
    suites = {
        "prop2_1": suite_prop2_1,
        "thm3_4": suite_thm3_4,
        "prop4_1": suite_prop4_1,
        "thm4_3": suite_thm4_3,
        "s21": suite_s21,
        "s31": suite_s31,
    }
    if name == "all":
        out = []
        for key, fn in suites.items():
            if key == "s21" and cu.ambient is not Ambient.S21:
                continue
            if key == "s31" and cu.ambient is not Ambient.S31:
                continue
            out.extend(Assertion(f"{key}/{a.name}", a.residual, a.tol) for a in fn(cu))
        return out
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}")
    return suites[name](cu)
