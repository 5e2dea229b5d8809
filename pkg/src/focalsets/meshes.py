"""Grid sampling of focal parametrizations and deterministic OBJ/CSV export.

OBJ files carry vertices and faces only; all science data (chart parameters,
metric class, singularity class, gram determinant, sphere residual) lives in
a sidecar CSV keyed by vertex index.  Both outputs are byte-deterministic:
fixed traversal order, 17-significant-digit floats, LF line endings.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .curvedsl import Ambient, CurveDef
from .errors import GeometryError
from .focal_desitter import beta_lambda, choose_normal_seed, spherical_focal_surface
from .focal_r31 import FocalSample, bif_lightlike_chart, focal_surface
from .minkowski import DEFAULT_TOL, mdot

ATTR_COLUMNS = ("index", "s_or_t", "mu", "branch", "metric_class", "sing_class",
                "det_gram", "on_sphere_residual")


def fmt(x: float) -> str:
    """Full round-trip float formatting (17 significant digits)."""
    return format(float(x), ".17g")


@dataclass
class MeshBundle:
    vertices: list = field(default_factory=list)   # projected 3D points
    faces: list = field(default_factory=list)      # 1-based quad index tuples
    attributes: list = field(default_factory=list)  # one dict per vertex
    skipped_cells: int = 0
    skipped_vertices: int = 0


def project_point(p: np.ndarray, projection: str) -> np.ndarray:
    """Map a sample point to 3D for meshing: identity in R^3_1/S^2_1,
    drop-x4 or stereographic from the x4 pole for S^3_1."""
    if p.shape[0] == 3:
        return p
    if projection == "drop4":
        return p[:3]
    if projection == "stereo":
        denom = 1.0 - p[3]
        if abs(denom) < 1e-12:
            raise GeometryError("stereographic projection pole hit")
        return p[:3] / denom
    raise ValueError(f"unknown projection {projection!r}")


def _sample_to_attrs(index, sample, point):
    gram = sample.gram
    det_gram = float("nan") if gram is None else float(gram[0, 0] * gram[1, 1] - gram[0, 1] ** 2)
    residual = abs(float(mdot(point, point)) - 1.0)
    return {
        "index": index,
        "s_or_t": sample.chart.t,
        "mu": sample.chart.mu,
        "branch": getattr(sample, "branch", 0),
        "metric_class": str(sample.metric_class),
        "sing_class": str(sample.sing_class),
        "det_gram": det_gram,
        "on_sphere_residual": residual,
    }


def focal_mesh(cu: CurveDef, chart: str, t_range, mu_range, nt: int, nmu: int,
               branch: int = 1, projection: str = "drop4",
               tol: float = DEFAULT_TOL) -> MeshBundle:
    """Sample a focal parametrization over a (t, mu) grid into a quad mesh.

    Cells whose corners fail chart preconditions are skipped (holes allowed,
    counted in the bundle summary).
    """
    ts = np.linspace(t_range[0], t_range[1], nt)
    mus = np.linspace(mu_range[0], mu_range[1], nmu)
    seed = None
    if cu.ambient is Ambient.S31 and chart == "lightlike":
        seed = choose_normal_seed(cu, float(0.5 * (t_range[0] + t_range[1])), tol)

    bundle = MeshBundle()
    index_of = {}
    for i, t in enumerate(ts):
        for j, mu in enumerate(mus):
            try:
                sample = _sample(cu, chart, float(t), float(mu), branch, tol, seed)
                point = project_point(sample.point, projection)
            except GeometryError:
                bundle.skipped_vertices += 1
                continue
            index_of[(i, j)] = len(bundle.vertices) + 1  # OBJ indices are 1-based
            bundle.vertices.append(point)
            bundle.attributes.append(_sample_to_attrs(index_of[(i, j)], sample, sample.point))
    for i in range(nt - 1):
        for j in range(nmu - 1):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            if all(c in index_of for c in corners):
                bundle.faces.append(tuple(index_of[c] for c in corners))
            else:
                bundle.skipped_cells += 1
    return bundle


def _sample(cu, chart, t, mu, branch, tol, seed):
    if cu.ambient is Ambient.R31:
        if chart == "frenet":
            return focal_surface(cu, t, mu, tol)
        return bif_lightlike_chart(cu, t, mu, tol)
    if cu.ambient is Ambient.S31:
        if chart == "frenet":
            return spherical_focal_surface(cu, t, mu, branch, tol)
        return beta_lambda(cu, t, mu, branch, tol, seed=seed)[1]
    raise GeometryError("meshes are built for R31 and S31 curves; S21 focal sets are curves")


def write_obj(bundle: MeshBundle, path) -> None:
    lines = []
    for v in bundle.vertices:
        lines.append("v " + " ".join(fmt(c) for c in v))
    for f in bundle.faces:
        lines.append("f " + " ".join(str(i) for i in f))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


def write_attrs_csv(bundle: MeshBundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ATTR_COLUMNS)
        for row in bundle.attributes:
            writer.writerow([_csv_cell(row[c]) for c in ATTR_COLUMNS])


def _csv_cell(value):
    if isinstance(value, float):
        return fmt(value)
    if value is None:
        return ""
    return value


def write_rows_csv(path, header, rows) -> None:
    """Generic deterministic CSV writer used by the CLI reports."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
