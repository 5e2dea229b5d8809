"""Distance-squared family f_v(t) = <gamma(t) - v, gamma(t) - v>:
jets, A_k classification, local-model labels, contact-sphere typing.

Classification uses raw parameter derivatives, so it stays valid at
lightlike points where arc length fails.  Derivative p is compared against
tol * scale * p!; the factorial keeps benign high-order growth from being
misread as a genuine nonzero derivative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import seriesvec, taylor
from .curvedsl import CurveDef, component_taylor, position
from .errors import GeometryError, UndefinedContactError
from .minkowski import DEFAULT_TOL, as_mvector, euclid_sq, mdot

CLASSIFY_ORDER = 5


@dataclass(frozen=True)
class SingClass:
    kind: str  # "regular" | "A" | "A_ge" | "degenerate_constant"
    order: int | None = None

    def __str__(self):
        if self.kind == "regular":
            return "Regular"
        if self.kind == "A":
            return f"A{self.order}"
        if self.kind == "A_ge":
            return f"A_ge({self.order})"
        return "DegenerateConstant"

    def at_least(self, k: int) -> bool:
        """True when this class certifies an A_{>=k} singularity."""
        if self.kind in ("A", "A_ge"):
            return self.order >= k
        return self.kind == "degenerate_constant"


REGULAR = SingClass("regular")
DEGENERATE_CONSTANT = SingClass("degenerate_constant")


def a_singularity(k: int) -> SingClass:
    return SingClass("A", k)


def a_at_least(k: int) -> SingClass:
    return SingClass("A_ge", k)


class LocalModel(enum.Enum):
    PLANE = "plane"
    CUSPIDAL_EDGE = "cuspidal edge"
    SWALLOWTAIL = "swallowtail"

    def __str__(self):
        return self.value


class ContactSphereType(enum.Enum):
    DE_SITTER_LIKE = "de-sitter-like"
    HYPERBOLIC_LIKE = "hyperbolic-like"
    LIGHTCONE_LIKE = "lightcone-like"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DistanceJet:
    derivs: np.ndarray  # f0 .. f_order, plain derivative values
    scale: float

    def d(self, k: int) -> float:
        return float(self.derivs[k])


def dist_jet(cu: CurveDef, t: float, v, order: int = CLASSIFY_ORDER) -> DistanceJet:
    """Derivatives of f_v to the requested order by Leibniz series assembly."""
    v = as_mvector(v, dim=cu.dim)
    coeffs = component_taylor(cu, float(t), order)
    diff = coeffs.copy()
    diff[0] -= v
    f_series = seriesvec.mdot(diff, diff)
    derivs = taylor.derivatives(f_series)

    g, gp = coeffs[0], coeffs[1] if order >= 1 else None
    scale = max(1.0, float(euclid_sq(g - v)))
    if gp is not None:
        scale = max(scale, float(euclid_sq(gp)))
        f1_indep = 2.0 * float(mdot(g - v, gp))
        if abs(derivs[1] - f1_indep) > 1e-12 * max(scale, abs(f1_indep)):
            raise GeometryError(
                f"distance-jet self-check failed: f'={derivs[1]!r} vs {f1_indep!r}"
            )
    return DistanceJet(derivs, scale)


def classify(cu: CurveDef, t: float, v, tol: float = DEFAULT_TOL) -> SingClass:
    """A_k type of f_v at t: first derivative order that clears the scaled gate.

    All five tested derivatives below the gate means either a genuinely
    constant f (DegenerateConstant, checked on a neighbourhood sample) or an
    A_{>=5} singularity beyond the certification budget.
    """
    dj = dist_jet(cu, t, v, CLASSIFY_ORDER)
    for p in range(1, CLASSIFY_ORDER + 1):
        if abs(dj.d(p)) > tol * dj.scale * math.factorial(p):
            return REGULAR if p == 1 else a_singularity(p - 1)
    a, b = cu.domain
    width = b - a
    f0 = dj.d(0)
    flat = True
    for offset in (-0.2, -0.1, -0.05, 0.05, 0.1, 0.2):
        u = min(max(t + offset * width, a), b)
        if u == t:
            continue
        fu = float(mdot(position(cu, u) - v, position(cu, u) - v))
        if abs(fu - f0) > tol * dj.scale:
            flat = False
            break
    return DEGENERATE_CONSTANT if flat else a_at_least(CLASSIFY_ORDER)


def local_model(c: SingClass) -> LocalModel:
    """Theorem-level local diffeomorphism label for a certified A_2..A_4 class.

    This is a label only: the versal-unfolding hypothesis behind it is
    assumed generic, not verified here.
    """
    if c.kind == "A" and c.order in (2, 3, 4):
        return {2: LocalModel.PLANE, 3: LocalModel.CUSPIDAL_EDGE, 4: LocalModel.SWALLOWTAIL}[c.order]
    raise ValueError(f"local model applies to A2, A3, A4 only (got {c})")


def contact_sphere_type(cu: CurveDef, t: float, v, tol: float = DEFAULT_TOL) -> ContactSphereType:
    """Which pseudo-sphere family the contact sphere centred at v belongs to."""
    v = as_mvector(v, dim=cu.dim)
    g = position(cu, float(t))
    diff = g - v
    if math.sqrt(float(euclid_sq(diff))) <= tol * max(1.0, math.sqrt(float(euclid_sq(g)))):
        raise UndefinedContactError("v equals the curve point; contact sphere undefined")
    q = float(mdot(diff, diff))
    if abs(q) <= tol * max(1.0, float(euclid_sq(diff))):
        return ContactSphereType.LIGHTCONE_LIKE
    return ContactSphereType.DE_SITTER_LIKE if q > 0 else ContactSphereType.HYPERBOLIC_LIKE
