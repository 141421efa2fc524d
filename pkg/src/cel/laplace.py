"""Discrete Laplace operator: cotangent stiffness, lumped mass, eigenvalues.

The cotangent weights are assembled from edge inner products, which works in
any ambient dimension; a torus sitting in R^4 gets its intrinsic flat
spectrum with no special casing. Eigenvalues come from shift-invert Lanczos
with a fixed starting vector, so repeated runs return identical output.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ParameterError, SolverError


def cotan_stiffness(mesh):
    """Sparse stiffness matrix: L_ii = sum of cotangent weights, positive
    semidefinite, kernel spanned by constants on a connected mesh."""
    verts, faces = mesh.vertices, mesh.faces
    rows, cols, vals = [], [], []
    for c in range(3):
        i = faces[:, (c + 1) % 3]
        j = faces[:, (c + 2) % 3]
        k = faces[:, c]
        u = verts[i] - verts[k]
        v = verts[j] - verts[k]
        uu = np.einsum("ij,ij->i", u, u)
        vv = np.einsum("ij,ij->i", v, v)
        uv = np.einsum("ij,ij->i", u, v)
        cross2 = np.maximum(uu * vv - uv * uv, 1e-300)
        cot = uv / np.sqrt(cross2)
        half = 0.5 * cot
        rows.extend([i, j, i, j])
        cols.extend([j, i, i, j])
        vals.extend([-half, -half, half, half])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    n = mesh.vertex_count
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


def lumped_mass(mesh):
    """Diagonal barycentric mass: one third of incident face area."""
    areas = mesh.face_areas() / 3.0
    m = np.zeros(mesh.vertex_count)
    np.add.at(m, mesh.faces[:, 0], areas)
    np.add.at(m, mesh.faces[:, 1], areas)
    np.add.at(m, mesh.faces[:, 2], areas)
    return sp.diags(m)


def laplace_eigs(mesh, k):
    """Smallest k eigenpairs of L phi = lambda M phi, nondecreasing.

    k is capped at a tenth of the vertex count; Lanczos needs that much room
    and the top of a lumped-mass spectrum is meaningless anyway.
    """
    n = mesh.vertex_count
    if not 1 <= k <= n // 10:
        raise ParameterError(f"need 1 <= k <= V/10 = {n // 10}")
    stiffness = cotan_stiffness(mesh)
    mass = lumped_mass(mesh)
    v0 = np.ones(n)
    try:
        vals, vecs = spla.eigsh(stiffness, k=k, M=mass, sigma=-1e-8,
                                which="LM", v0=v0)
    except spla.ArpackNoConvergence as exc:
        raise SolverError("eigenvalue iteration did not converge; "
                          "try lowering k or refining the mesh") from exc
    order = np.argsort(vals)
    vals = vals[order]
    vecs = vecs[:, order]
    # the constant mode lands at round-off scale; clamp it to an exact zero
    vals[np.abs(vals) < 1e-9] = 0.0
    return vals, vecs


def laplace_minmax(mesh, k):
    """First k Laplace eigenvalues, smallest first (lambda_0 = 0)."""
    vals, _ = laplace_eigs(mesh, k)
    return vals
