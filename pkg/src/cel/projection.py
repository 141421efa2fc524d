"""Stereographic projection between the unit three-sphere and R^3.

The forward map projects from a pole P: a point x of S^3 with x != P goes to
the hyperplane orthogonal to P, scaled so that the equator two-sphere of P
lands on the unit sphere of R^3. Coordinates on that hyperplane come from a
deterministic orthonormal basis, so for the pole (0, 0, 0, -1) the image
coordinates are just the first three ambient coordinates rescaled.
"""

import numpy as np

from .errors import InputError, NearPoleError, ParameterError
from .mesh import PolyLink, TriMesh
from .shapes import _orthobasis


def _check_pole(pole):
    pole = np.asarray(pole, dtype=np.float64)
    if pole.shape != (4,) or abs(np.linalg.norm(pole) - 1.0) > 1e-9:
        raise ParameterError("pole must be a unit vector in R^4")
    return pole / np.linalg.norm(pole)


def _check_on_sphere(points):
    err = np.abs(np.linalg.norm(points, axis=-1) - 1.0)
    if err.max() > 1e-9:
        raise InputError(f"points must lie on S^3 (max |1 - |x|| = {err.max():.3g})")


def stereographic(points, pole, basis=None):
    """Project points of S^3 \\ {pole} to R^3.

    x maps to (x - <x,P>P) / (1 - <x,P>), expressed in an orthonormal basis
    of the hyperplane P-perp (`basis`, shape (3, 4), defaults to a
    deterministic choice). The equator two-sphere of the pole maps to the
    unit sphere, the antipode of the pole to the origin.
    """
    pole = _check_pole(pole)
    pts = np.asarray(points, dtype=np.float64)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != 4:
        raise ParameterError("expected points in R^4")
    _check_on_sphere(pts)
    if basis is None:
        basis = _orthobasis(pole)
    diff = pts - pole
    dist = np.linalg.norm(diff, axis=1)
    if dist.min() < 1e-9:
        raise NearPoleError(f"point within {dist.min():.3g} of the projection pole")
    # 1 - <x,P> = |x - P|^2 / 2 for unit vectors; the difference form stays
    # accurate when x is close to the pole
    denom = 0.5 * dist**2
    out = (pts @ basis.T) / denom[:, None]
    return out[0] if single else out


def stereographic_inverse(points, pole, basis=None):
    """Inverse of `stereographic`: y in R^3 maps back to S^3 \\ {pole}."""
    pole = _check_pole(pole)
    pts = np.asarray(points, dtype=np.float64)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != 3:
        raise ParameterError("expected points in R^3")
    if basis is None:
        basis = _orthobasis(pole)
    s = np.sum(pts**2, axis=1)
    out = (2.0 * (pts @ basis) + (s - 1.0)[:, None] * pole) / (s + 1.0)[:, None]
    out /= np.linalg.norm(out, axis=1)[:, None]
    return out[0] if single else out


def project_mesh(mesh, pole):
    """Stereographic image of an S3 mesh as an R3 mesh (same faces)."""
    if mesh.ambient != "S3":
        raise InputError("project_mesh expects an S3 mesh")
    verts = stereographic(mesh.vertices, pole)
    return TriMesh(verts, mesh.faces.copy(), ambient="R3")


def project_link(link, pole):
    """Stereographic image of an R^4 link as an R^3 link."""
    if link.dim != 4:
        raise InputError("project_link expects a link in R^4")
    return PolyLink(stereographic(link.gamma1, pole),
                    stereographic(link.gamma2, pole))


def lift_mesh(mesh, pole):
    """Inverse stereographic image of an R3 mesh as an S3 mesh."""
    if mesh.ambient != "R3":
        raise InputError("lift_mesh expects an R3 mesh")
    verts = stereographic_inverse(mesh.vertices, pole)
    return TriMesh(verts, mesh.faces.copy(), ambient="S3")
