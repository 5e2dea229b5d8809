"""Spherical focal sets of curves in the de Sitter spaces S^2_1 and S^3_1.

S^2_1: the focal object is a curve alpha(+/-) (minus branch = exact antipode);
a branch-aware chart built from N = gamma ^ gamma' continues it smoothly
through lightlike points.  S^3_1: the focal object is a surface B(+/-) with
g-/h-spherical cuspidal curves; near lightlike points the surface is
reconstructed as v = mu gamma + beta N + lambda E from the defining
equations <gamma', v> = 0, <gamma'', v> = 0, <v, v> = 1, with (N, E) a
conditioning-chosen completion of the normal hyperplane.

Every emitted point lies on the unit de Sitter sphere.  Since
-f_v/2 = <gamma, v> - 1 on the sphere, distance-squared and height-function
derivative tests agree; samples assert that agreement as a self-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import seriesvec, taylor
from .causal import GUARD_SCALE, _bisect, arclength_derivs
from .curvedsl import CurveDef, component_taylor
from .errors import (
    BasisConstructionError,
    GeometryError,
    MuDomainError,
    UndefinedCuspidalError,
    UndefinedFocalError,
)
from .focal_r31 import ChartPoint, MetricClass, tangent_metric
from .frames import frame_s21, frame_s31
from .minkowski import (
    DEFAULT_TOL,
    CausalType,
    euclid_sq,
    is_relative_zero,
    mdot,
    wedge3,
    wedge4,
)
from .singularities import SingClass, classify, dist_jet

DEFINING_RESIDUAL_TOL = 1e-8  # back-substitution self-check, relative


@dataclass(frozen=True)
class SphericalFocalSample:
    point: np.ndarray
    branch: int  # +1 | -1
    chart: ChartPoint
    gram: np.ndarray | None  # surfaces only (S^3_1)
    metric_class: MetricClass
    sing_class: SingClass
    boundary: bool = False  # radicand hit zero: domain rim, tangent plane undefined


@dataclass(frozen=True)
class BetaLambdaReport:
    beta: float
    lam: float
    r_value: float  # R(t, mu) = A mu^2 + B, the beta radicand
    a_coef: float
    b_coef: float
    branch_sign_inner: int  # sign applied to the square root inside beta


@dataclass(frozen=True)
class SingularScan:
    roots: tuple[float, ...]
    constant_kg: bool


def _check_branch(branch):
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")


def _check_defining(cu, t, point, tol=DEFAULT_TOL):
    """Back-substitution: the sample must satisfy f' = f'' = 0 and lie on the
    sphere.  The same derivatives are recomputed from the height function
    <gamma, v> - 1 (f_p = -2 h_p on the sphere) as a cheap cross-validation."""
    dj = dist_jet(cu, t, point, order=2)
    h_derivs = taylor.derivatives(
        seriesvec.mdot(component_taylor(cu, float(t), 2), seriesvec.constant_vec(point, 2))
    )
    for p in (1, 2):
        if abs(dj.d(p) + 2.0 * float(h_derivs[p])) > 1e-10 * max(dj.scale, abs(dj.d(p))):
            raise GeometryError("distance/height jet disagreement on the sphere")
        if abs(dj.d(p)) > DEFINING_RESIDUAL_TOL * dj.scale:
            raise GeometryError(
                f"focal sample violates the defining equations: |f^({p})| = "
                f"{abs(dj.d(p)):.3e} at t={t}"
            )
    unit = abs(float(mdot(point, point)) - 1.0)
    if unit > 1e-9 * max(1.0, float(euclid_sq(point))):
        raise GeometryError(f"focal sample off the unit sphere by {unit:.3e}")


# ---------------------------------------------------------------------------
# S^2_1: spherical focal curve
# ---------------------------------------------------------------------------

def _curve_metric_class(tangent, q_tangent, tol):
    if math.sqrt(float(euclid_sq(tangent))) <= tol:
        return MetricClass.UNDEFINED
    if is_relative_zero(q_tangent, float(euclid_sq(tangent)), tol):
        return MetricClass.DEGENERATE
    return MetricClass.RIEMANNIAN if q_tangent > 0 else MetricClass.LORENTZIAN


def spherical_focal_curve(cu: CurveDef, t: float, branch: int = 1,
                          tol: float = DEFAULT_TOL, guard: float = GUARD_SCALE) -> SphericalFocalSample:
    """Frenet-chart spherical focal curve on S^2_1:
    alpha(+/-) = +/- (k_g gamma + eps n) / sqrt(k_g^2 + delta)."""
    _check_branch(branch)
    fr = frame_s21(cu, t, tol, guard)
    w = fr.kg**2 + fr.delta
    if w <= tol * max(1.0, fr.kg**2):
        raise UndefinedFocalError(
            f"k_g^2 + delta = {w:.3e} <= 0 at t={t}: spherical focal curve "
            "undefined (spacelike arcs need |k_g| > 1)"
        )
    rt = math.sqrt(w)
    point = branch * (fr.kg / rt * fr.gamma + fr.eps / rt * fr.n)
    # metric of alpha as a curve: <alpha', alpha'> = k_g'^2 (1 + delta k_g^2) / w^3
    q_alpha = fr.kgp**2 * (1.0 + fr.delta * fr.kg**2) / w**3
    aprime = (fr.delta * fr.kgp / w**1.5) * fr.gamma - (fr.eps * fr.kg * fr.kgp / w**1.5) * fr.n
    metric = _curve_metric_class(aprime, q_alpha, tol)
    sing = classify(cu, t, point, tol)
    _check_defining(cu, t, point, tol)
    return SphericalFocalSample(point, branch, ChartPoint("frenet", t, None), None, metric, sing)


def spherical_focal_speed_sq(cu: CurveDef, t: float, tol: float = DEFAULT_TOL,
                             guard: float = GUARD_SCALE) -> float:
    """Closed-form <alpha', alpha'> (arc-length derivative of the plus branch)."""
    fr = frame_s21(cu, t, tol, guard)
    w = fr.kg**2 + fr.delta
    return fr.kgp**2 * (1.0 + fr.delta * fr.kg**2) / w**3


def spherical_singular_points(cu: CurveDef, interval: tuple[float, float],
                              tol: float = DEFAULT_TOL, grid: int = 1024,
                              guard: float = GUARD_SCALE) -> SingularScan:
    """Roots of k_g' on a non-lightlike window: where alpha(+/-) is singular.

    A curve with k_g' ~ 0 across the whole window (constant geodesic
    curvature) is reported as a diagnostic instead of a root list.
    """
    ts = np.linspace(interval[0], interval[1], grid)
    d = arclength_derivs(cu, ts, 3, guard)
    n = wedge3(d[0], d[1])
    kg = mdot(d[2], n)
    kgp = mdot(d[3], n) + mdot(d[2], wedge3(d[0], d[2]))
    if np.max(np.abs(kgp)) <= tol * max(1.0, float(np.max(np.abs(kg)))):
        return SingularScan((), True)
    f = lambda u: frame_s21(cu, float(u), tol, guard).kgp
    xtol = 1e-12 * (cu.domain[1] - cu.domain[0])
    roots = []
    for i in range(grid - 1):
        if (kgp[i] < 0) != (kgp[i + 1] < 0):
            roots.append(_bisect(f, float(ts[i]), float(ts[i + 1]), xtol))
    return SingularScan(tuple(roots), False)


def spherical_bif_lightlike(cu: CurveDef, t: float, tol: float = DEFAULT_TOL):
    """Branch-aware bifurcation chart on S^2_1 near a lightlike point.

    Returns the (plus, minus) sample pair; the minus point is the exact
    antipode of the plus point.  Smooth across the lightlike parameter, where
    it meets the curve itself.
    """
    base = component_taylor(cu, float(t), 3)  # Taylor series, length 4
    g = base
    gp = taylor.deriv(base)          # length 3
    gpp = taylor.deriv(gp)           # length 2
    L = 2                            # work to first order in t
    gL, gpL, gppL = g[:L], gp[:L], gpp[:L]
    n_ser = seriesvec.wedge3(gL, gpL)
    q_ser = seriesvec.mdot(gpL, gpL)
    d_ser = seriesvec.mdot(n_ser, gppL)
    d0 = float(d_ser[0])
    if is_relative_zero(d0, math.sqrt(float(euclid_sq(n_ser[0]) * euclid_sq(gppL[0]))), tol):
        raise GeometryError(
            f"<gamma ^ gamma', gamma''> ~ 0 at t={t}: branch selection undefined (non-Omega)"
        )
    rad_ser = taylor.mul(d_ser, d_ser) - taylor.powi(q_ser, 3)
    q0 = float(q_ser[0])
    if rad_ser[0] <= tol * max(1.0, d0 * d0, abs(q0) ** 3):
        raise GeometryError(f"branch radicand <= 0 at t={t}: outside the certified window")
    mu_ser = taylor.div(q_ser, taylor.sqrt(rad_ser))
    c_ser = taylor.sqrt(taylor.constant(1.0, L - 1) + taylor.mul(taylor.mul(mu_ser, mu_ser), q_ser))
    sign_d = 1.0 if d0 > 0 else -1.0
    alpha = seriesvec.scale_vec(c_ser, gL) + sign_d * seriesvec.scale_vec(mu_ser, n_ser)
    point = alpha[0]
    aprime = alpha[1]
    q_alpha = float(mdot(aprime, aprime))
    metric = _curve_metric_class(aprime, q_alpha, tol)
    _check_defining(cu, t, point, tol)
    _check_defining(cu, t, -point, tol)
    plus = SphericalFocalSample(point, 1, ChartPoint("lightlike", t, None), None,
                                metric, classify(cu, t, point, tol))
    minus = SphericalFocalSample(-point, -1, ChartPoint("lightlike", t, None), None,
                                 metric, classify(cu, t, -point, tol))
    return plus, minus


# ---------------------------------------------------------------------------
# S^3_1: spherical focal surface, Frenet chart
# ---------------------------------------------------------------------------

def _s31_radicand(fr, mu):
    if fr.variant is CausalType.SPACELIKE:
        w = -fr.delta * fr.k**2 + fr.delta * mu**2 * (fr.k**2 + fr.delta)
    else:
        w = fr.k**2 - mu**2 * (fr.k**2 + 1.0)
    scale = max(1.0, fr.k**2, mu**2 * (fr.k**2 + 1.0))
    return w, scale


def _s31_bound_text(fr):
    k = fr.k
    if fr.variant is CausalType.TIMELIKE:
        return f"|mu| <= {k / math.sqrt(k * k + 1):.6g}"
    if fr.delta > 0:
        return f"|mu| >= {k / math.sqrt(k * k + 1):.6g}"
    if k * k > 1:
        return f"|mu| <= {k / math.sqrt(k * k - 1):.6g}"
    return "all mu (k_g^2 < 1, timelike normal)"


def spherical_focal_surface(cu: CurveDef, t: float, mu: float, branch: int = 1,
                            tol: float = DEFAULT_TOL, guard: float = GUARD_SCALE) -> SphericalFocalSample:
    """Frenet-chart spherical focal surface B(+/-)(s, mu) on S^3_1."""
    _check_branch(branch)
    fr = frame_s31(cu, t, tol, guard)
    w, w_scale = _s31_radicand(fr, mu)
    if w < -tol * w_scale:
        raise MuDomainError(
            f"mu={mu} outside the focal-surface domain at t={t}: {_s31_bound_text(fr)}"
        )
    boundary = abs(w) <= tol * w_scale
    rt = math.sqrt(max(w, 0.0))
    k, tau, kp, delta = fr.k, fr.tau, fr.kp, fr.delta
    if fr.variant is CausalType.SPACELIKE:
        point = mu * fr.gamma + (mu / (delta * k)) * fr.n + branch * (rt / k) * fr.e
    else:
        point = mu * fr.gamma - (mu / k) * fr.n + branch * (rt / k) * fr.e
    _check_defining(cu, t, point, tol)
    sing = classify(cu, t, point, tol)
    if boundary:
        return SphericalFocalSample(point, branch, ChartPoint("frenet", t, mu), None,
                                    MetricClass.UNDEFINED, sing, boundary=True)
    if fr.variant is CausalType.SPACELIKE:
        cn_s = -mu * kp / (delta * k**2) + branch * tau * rt / k
        ce_s = mu * tau / (delta * k) - branch * mu**2 * kp / (k**2 * rt)
        p_s = cn_s * fr.n + ce_s * fr.e
        p_mu = fr.gamma + (1.0 / (delta * k)) * fr.n + branch * (delta * mu * (k**2 + delta) / (k * rt)) * fr.e
    else:
        cn_s = mu * kp / k**2 - branch * tau * rt / k
        ce_s = -mu * tau / k + branch * mu**2 * kp / (k**2 * rt)
        p_s = cn_s * fr.n + ce_s * fr.e
        p_mu = fr.gamma - (1.0 / k) * fr.n - branch * (mu * (k**2 + 1.0) / (k * rt)) * fr.e
    gram, metric, _ = tangent_metric(p_s, p_mu, tol)
    return SphericalFocalSample(point, branch, ChartPoint("frenet", t, mu), gram, metric, sing)


def _cuspidal_mu(fr, branch, tol):
    # mu solves the A_{>=3} condition k' mu = (delta) b tau k sqrt(W) on the
    # surface branch b; squaring gives the radicand below
    k, tau, kp = fr.k, fr.tau, fr.kp
    if fr.variant is CausalType.SPACELIKE:
        num = tau**2 * k**4 + tau**2 * k**2 * fr.delta - kp**2 * fr.delta
        orient = fr.delta
    else:
        num = tau**2 * k**4 + kp**2 + tau**2 * k**2
        orient = 1
    scale = max(1.0, tau**2 * k**4, kp**2, tau**2 * k**2)
    if num <= tol * scale:
        raise UndefinedCuspidalError(
            f"cuspidal radicand {num:.3e} <= 0: spherical cuspidal curve undefined here"
        )
    sign_kp = 1.0 if kp >= 0 else -1.0
    return orient * branch * sign_kp * tau * k**2 / math.sqrt(num)


def g_cuspidal(cu: CurveDef, t: float, branch: int = 1, tol: float = DEFAULT_TOL,
               guard: float = GUARD_SCALE) -> SphericalFocalSample:
    """g-spherical cuspidal curve (spacelike arcs): B(s, mu(s)) with A_{>=3} contact."""
    _check_branch(branch)
    fr = frame_s31(cu, t, tol, guard)
    if fr.variant is not CausalType.SPACELIKE:
        raise GeometryError("g_cuspidal applies to spacelike arcs; use h_cuspidal")
    mu_s = _cuspidal_mu(fr, branch, tol)
    return spherical_focal_surface(cu, t, mu_s, branch, tol, guard)


def h_cuspidal(cu: CurveDef, t: float, branch: int = 1, tol: float = DEFAULT_TOL,
               guard: float = GUARD_SCALE) -> SphericalFocalSample:
    """h-spherical cuspidal curve (timelike arcs): B(s, mu(s)) with A_{>=3} contact."""
    _check_branch(branch)
    fr = frame_s31(cu, t, tol, guard)
    if fr.variant is not CausalType.TIMELIKE:
        raise GeometryError("h_cuspidal applies to timelike arcs; use g_cuspidal")
    mu_s = _cuspidal_mu(fr, branch, tol)
    return spherical_focal_surface(cu, t, mu_s, branch, tol, guard)


# ---------------------------------------------------------------------------
# S^3_1: lightlike-window chart via the beta/lambda system
# ---------------------------------------------------------------------------

_BASIS_SEEDS = (0, 1, 2, 3)


def _seed_candidates(cu: CurveDef, t: float, tol: float):
    """Basis seeds ranked by the conditioning score |<gamma'', gamma ^ gamma' ^ c>|,
    keeping only safely spacelike candidates c = gamma ^ gamma' ^ e_i."""
    c = component_taylor(cu, float(t), 2)
    g0, g1, g2v = c[0], c[1], 2.0 * c[2]
    ranked = []
    for i in _BASIS_SEEDS:
        h = np.zeros(cu.dim)
        h[i] = 1.0
        cand = wedge4(g0, g1, h)
        cc = float(mdot(cand, cand))
        if cc <= tol * max(1.0, float(euclid_sq(cand))):
            continue
        score = abs(float(mdot(g2v, wedge4(g0, g1, cand))))
        ranked.append((score, i))
    ranked.sort(reverse=True)
    if not ranked:
        raise BasisConstructionError(
            f"no spacelike normal-basis candidate at t={t}; cannot build (N, E)"
        )
    return [i for _, i in ranked]


def choose_normal_seed(cu: CurveDef, t: float, tol: float = DEFAULT_TOL) -> int:
    return _seed_candidates(cu, t, tol)[0]


def _basis_series(cu: CurveDef, t: float, seed: int):
    """First-order series of gamma, gamma', gamma'', N, E for the beta/lambda
    system; N is unit spacelike, mdot-orthogonal to gamma and gamma'."""
    base = component_taylor(cu, float(t), 3)
    L = 2
    g = base[:L]
    gp = taylor.deriv(base)[:L]
    gpp = taylor.deriv(taylor.deriv(base))[:L]
    h = np.zeros(cu.dim)
    h[seed] = 1.0
    cand = seriesvec.wedge4(g, gp, seriesvec.constant_vec(h, L - 1))
    cc = seriesvec.mdot(cand, cand)
    if cc[0] <= 0:
        raise BasisConstructionError(f"seed {seed} lost spacelike character at t={t}")
    inv = taylor.div(taylor.constant(1.0, L - 1), taylor.sqrt(cc))
    n_ser = seriesvec.scale_vec(inv, cand)
    e_ser = seriesvec.wedge4(g, gp, n_ser)
    return g, gp, gpp, n_ser, e_ser


def beta_lambda(cu: CurveDef, t: float, mu: float, branch: int = 1,
                tol: float = DEFAULT_TOL, seed: int | None = None):
    """Solve the defining equations for v = mu gamma + beta N + lambda E.

    lambda comes from <gamma'', v> = 0, beta from <v, v> = 1; the branch sign
    picks the root of the beta quadratic.  Returns (BetaLambdaReport, sample).
    Retries alternate basis seeds when <gamma'', E> is tolerance-zero.
    """
    _check_branch(branch)
    seeds = [seed] if seed is not None else _seed_candidates(cu, t, tol)
    last_error = None
    for sd in seeds:
        try:
            return _beta_lambda_with_seed(cu, t, mu, branch, tol, sd)
        except BasisConstructionError as err:
            last_error = err
    raise last_error


def _beta_lambda_with_seed(cu, t, mu, branch, tol, seed):
    g, gp, gpp, n_ser, e_ser = _basis_series(cu, t, seed)
    q = seriesvec.mdot(gp, gp)
    a = seriesvec.mdot(gpp, n_ser)
    b = seriesvec.mdot(gpp, e_ser)
    nn = seriesvec.mdot(n_ser, n_ser)
    ee = seriesvec.mdot(e_ser, e_ser)
    b0 = float(b[0])
    if is_relative_zero(b0, math.sqrt(float(euclid_sq(gpp[0]) * max(euclid_sq(e_ser[0]), 1.0))), tol):
        raise BasisConstructionError(f"<gamma'', E> ~ 0 with seed {seed} at t={t}")

    m = taylor.mul
    b2 = m(b, b)
    a2 = m(a, a)
    q2 = m(q, q)
    den = m(b2, m(nn, nn)) + m(ee, a2)
    if is_relative_zero(float(den[0]), max(abs(float(b2[0])), abs(float(m(ee, a2)[0]))), tol):
        raise BasisConstructionError(f"beta denominator ~ 0 with seed {seed} at t={t}")
    a_coef = -(m(a2, m(ee, b2)) + m(nn, m(b2, b2)) + m(nn, m(b2, m(q2, ee))))
    b_coef = m(b2, m(a2, ee)) + m(nn, m(b2, b2))
    r = a_coef * mu**2 + b_coef
    r0 = float(r[0])
    r_scale = max(1.0, abs(float(a_coef[0])) * mu**2, abs(float(b_coef[0])))
    if r0 < -tol * r_scale:
        raise MuDomainError(f"R(t, mu) = {r0:.3e} < 0 at t={t}, mu={mu}: outside the chart domain")
    boundary = abs(r0) <= tol * r_scale

    num_smooth = mu * m(q, m(a, ee))
    if boundary:
        beta0 = float(num_smooth[0]) / float(den[0])
        lam0 = (mu * float(q[0]) - beta0 * float(a[0])) / b0
        point = mu * g[0] + beta0 * n_ser[0] + lam0 * e_ser[0]
        report = BetaLambdaReport(beta0, lam0, r0, float(a_coef[0]), float(b_coef[0]), branch)
        _check_defining(cu, t, point, tol)
        sample = SphericalFocalSample(point, branch, ChartPoint("lightlike", t, mu), None,
                                      MetricClass.UNDEFINED, classify(cu, t, point, tol),
                                      boundary=True)
        return report, sample

    beta = taylor.div(num_smooth + branch * taylor.sqrt(r), den)
    lam = taylor.div(mu * q - m(beta, a), b)
    v = mu * g + seriesvec.scale_vec(beta, n_ser) + seriesvec.scale_vec(lam, e_ser)
    point = v[0]
    v_t = v[1]
    beta_mu = (float(q[0]) * float(a[0]) * float(ee[0])
               + branch * float(a_coef[0]) * mu / math.sqrt(r0)) / float(den[0])
    lam_mu = (float(q[0]) - beta_mu * float(a[0])) / b0
    v_mu = g[0] + beta_mu * n_ser[0] + lam_mu * e_ser[0]
    gram, metric, _ = tangent_metric(v_t, v_mu, tol)
    _check_defining(cu, t, point, tol)
    report = BetaLambdaReport(float(beta[0]), float(lam[0]), r0,
                              float(a_coef[0]), float(b_coef[0]), branch)
    sample = SphericalFocalSample(point, branch, ChartPoint("lightlike", t, mu), gram,
                                  metric, classify(cu, t, point, tol))
    return report, sample


def s31_ld_extract(cu: CurveDef, t0: float, resolution: int = 49,
                   tol: float = DEFAULT_TOL, margin: float = 0.01) -> list[SphericalFocalSample]:
    """LD curves B(+/-)(t0, mu) for -1 < mu < 1 at a certified lightlike point.

    The mu -> +/-1 endpoints (where tangent planes cease to exist) are
    approached to within `margin`.
    """
    seed = choose_normal_seed(cu, t0, tol)
    out = []
    for m in np.linspace(-1.0 + margin, 1.0 - margin, resolution):
        for branch in (1, -1):
            _, sample = beta_lambda(cu, t0, float(m), branch, tol, seed=seed)
            out.append(sample)
    return out
