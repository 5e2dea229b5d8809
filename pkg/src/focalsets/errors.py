"""Exception types shared across the package."""


class GeometryError(Exception):
    """Numeric or domain failure inside a geometric computation."""


class CurveSyntaxError(ValueError):
    """Curve file or expression text failed to parse."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if column is not None:
            parts.append(f"column {column}")
        where = f" ({', '.join(parts)})" if parts else ""
        super().__init__(message + where)


class EvalDomainError(GeometryError):
    """Jet evaluation hit a singular point of an expression (sqrt of a
    non-positive radicand, log of a non-positive argument, division by zero)."""


class GuardBandError(GeometryError):
    """Evaluation too close to a lightlike point for arc-length machinery."""


class DegenerateFrameError(GeometryError):
    """Curvature below tolerance (or lightlike normal); Frenet frame undefined."""


class UndefinedFocalError(GeometryError):
    """The spherical focal curve is undefined (k_g^2 + delta <= 0)."""


class UndefinedCuspidalError(GeometryError):
    """Cuspidal-curve parametrization undefined (vanishing torsion/radicand)."""


class MuDomainError(GeometryError):
    """mu outside the radicand domain of a focal parametrization."""


class UndefinedContactError(GeometryError):
    """Contact pseudo-sphere undefined because the centre equals the curve point."""


class BasisConstructionError(GeometryError):
    """No well-conditioned normal basis (N, E) could be constructed."""
