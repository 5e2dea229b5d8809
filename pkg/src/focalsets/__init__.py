"""Focal and bifurcation sets of curves in Minkowski 3-space and the de
Sitter spaces S^2_1 and S^3_1, with dedicated charts near lightlike points."""

from .causal import (
    CausalArc,
    LightlikePoint,
    arclength_jet,
    find_lightlike_points,
    omega_check,
    speed_sq,
    split_arcs,
)
from .curvedsl import (
    Ambient,
    CurveDef,
    Jet,
    curve,
    eval_jet,
    load_curve,
    parse_curve,
    parse_expr,
    validate_on_sphere,
)
from .errors import (
    BasisConstructionError,
    CurveSyntaxError,
    DegenerateFrameError,
    EvalDomainError,
    GeometryError,
    GuardBandError,
    MuDomainError,
    UndefinedContactError,
    UndefinedCuspidalError,
    UndefinedFocalError,
)
from .focal_desitter import (
    BetaLambdaReport,
    SphericalFocalSample,
    beta_lambda,
    g_cuspidal,
    h_cuspidal,
    s31_ld_extract,
    spherical_bif_lightlike,
    spherical_focal_curve,
    spherical_focal_surface,
    spherical_singular_points,
)
from .focal_r31 import (
    CuspidalSample,
    FocalSample,
    MetricClass,
    bif_lightlike_chart,
    cuspidal_curve,
    focal_surface,
    ld_extract,
    mu0,
    tangent_metric,
)
from .frames import FrameR31, FrameS21, FrameS31, frame_r31, frame_s21, frame_s31
from .minkowski import CausalType, causal_type, det4, mdot, mnorm, wedge3, wedge4
from .singularities import (
    ContactSphereType,
    DistanceJet,
    LocalModel,
    SingClass,
    classify,
    contact_sphere_type,
    dist_jet,
    local_model,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
