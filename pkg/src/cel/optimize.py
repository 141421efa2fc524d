"""Descent on bending and cross energies, and the tube radius sweep.

Gradients are central finite differences of the same discrete energies the
rest of the package reports, so a descent step can never game the
measurement. Brute-force differencing would refit curvature on the whole
mesh per coordinate; instead vertices are grouped into classes pairwise
farther than four edges apart, a whole class is displaced at once, and only
the fits inside the two-ring of each displaced vertex are redone. No energy
term lies in the two-ring of two class members at the same time, so the
grouped difference recovers every per-vertex derivative exactly, at the
cost of one localized refit per class and axis instead of one per vertex
and axis.

On the three-sphere, positions are renormalized to unit length before every
evaluation. Differencing the composition with the projection makes radial
gradient components vanish identically, so the descent never needs an
explicit tangency constraint.
"""

from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from ._accum import stable_sum
from .curvature import (_s3_chart, _s3_tangent_basis, _tangent_pair,
                        _two_ring)
from .energies import _cross_energy_sum, _resample_closed, willmore_energy
from .errors import InputError, MeshQualityError, ParameterError
from .mesh import PolyLink, TriMesh
from .shapes import tube_torus


class DescentTrace(NamedTuple):
    energies: list        # energy after each accepted configuration
    gradient_norms: list  # Frobenius norm per computed gradient
    status: str           # 'max_steps', 'stationary', 'stagnated', 'collision'


class SweepReport(NamedTuple):
    radii: np.ndarray
    energies: np.ndarray
    min_radius: float
    min_energy: float


# ---------------------------------------------------------------------------
# localized energy terms
# ---------------------------------------------------------------------------


class _LocalEnergyModel:
    """Per-vertex bending energy terms with localized refits.

    The combinatorics (two-ring stencils, vertex-face incidence, conflict
    coloring) depend only on the faces and are precomputed once; after that,
    energy terms for any subset of vertices can be evaluated at any vertex
    positions.
    """

    def __init__(self, mesh):
        self.faces = mesh.faces
        self.ambient = mesh.ambient
        self.dim = mesh.vertices.shape[1]
        self.n = mesh.vertex_count
        self.indptr, self.indices = _two_ring(mesh)

        flat = self.faces.ravel()
        order = np.argsort(flat, kind="stable")
        self.vf_face = order // 3
        self.vf_corner = order % 3
        counts = np.bincount(flat, minlength=self.n)
        self.vf_ptr = np.concatenate([[0], np.cumsum(counts)])

        self.classes = self._conflict_classes()
        self._class_rows = [self._row_layout(c) for c in self.classes]

    # -- structure ---------------------------------------------------------

    def _conflict_classes(self):
        """Greedy classes of vertices pairwise farther than 4 edges apart.

        Two vertices conflict when some energy term depends on both, which
        happens exactly when their two-rings-with-self intersect.
        """
        n = self.n
        cols = self.indices
        rows = np.repeat(np.arange(n), np.diff(self.indptr))
        data = np.ones(len(cols), dtype=np.int8)
        reach = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
        reach += sp.eye(n, dtype=np.int8, format="csr")
        conflict = (reach @ reach.T).tocsr()
        color = np.full(n, -1, dtype=np.int64)
        for v in range(n):
            taken = set(color[conflict.indices[conflict.indptr[v]:
                                               conflict.indptr[v + 1]]])
            c = 0
            while c in taken:
                c += 1
            color[v] = c
        return [np.flatnonzero(color == c) for c in range(color.max() + 1)]

    def _row_layout(self, members):
        """Concatenated fit rows for one class: each member contributes its
        own two-ring-with-self block, blocks disjoint by construction."""
        blocks = [np.concatenate(([v], self.indices[self.indptr[v]:
                                                    self.indptr[v + 1]]))
                  for v in members]
        rows = np.concatenate(blocks)
        ptr = np.concatenate([[0], np.cumsum([len(b) for b in blocks])])
        return rows, ptr

    def _gather(self, rows):
        """Index arrays to evaluate fits for `rows`: two-ring points and
        incident (face, corner) pairs, both grouped by row."""
        nbr_blocks = [self.indices[self.indptr[r]:self.indptr[r + 1]]
                      for r in rows]
        nbr_ptr = np.concatenate([[0], np.cumsum([len(b) for b in nbr_blocks])])
        nbr_idx = np.concatenate(nbr_blocks)
        nbr_owner = np.repeat(np.arange(len(rows)), np.diff(nbr_ptr))

        vf_blocks = [slice(self.vf_ptr[r], self.vf_ptr[r + 1]) for r in rows]
        f_idx = np.concatenate([self.vf_face[s] for s in vf_blocks])
        f_corner = np.concatenate([self.vf_corner[s] for s in vf_blocks])
        f_owner = np.repeat(np.arange(len(rows)),
                            [s.stop - s.start for s in vf_blocks])
        return nbr_idx, nbr_ptr, nbr_owner, f_idx, f_corner, f_owner

    # -- evaluation --------------------------------------------------------

    def energy_terms(self, positions, rows, gather):
        """Energy term (H^2 w, plus area weight w itself on S^3) for each
        row, at the given positions. Mirrors the full-mesh curvature fit."""
        nbr_idx, nbr_ptr, nbr_owner, f_idx, f_corner, f_owner = gather
        base = positions[rows]
        fpts = self.faces[f_idx]
        own_p = positions[rows[f_owner]]
        nb1 = positions[fpts[np.arange(len(f_idx)), (f_corner + 1) % 3]]
        nb2 = positions[fpts[np.arange(len(f_idx)), (f_corner + 2) % 3]]

        # areas of incident faces -> barycentric weights
        u = nb1 - own_p
        w2 = nb2 - own_p
        uu = np.einsum("ij,ij->i", u, u)
        vv = np.einsum("ij,ij->i", w2, w2)
        uv = np.einsum("ij,ij->i", u, w2)
        tri_area = 0.5 * np.sqrt(np.maximum(uu * vv - uv * uv, 0.0))
        weight = np.zeros(len(rows))
        np.add.at(weight, f_owner, tri_area / 3.0)

        if self.ambient == "S3":
            basis = _s3_tangent_basis(base)
            acc = np.zeros((len(rows), 3))
            y1 = _s3_chart(own_p, nb1)
            y2 = _s3_chart(own_p, nb2)
            c1 = np.einsum("fkd,fd->fk", basis[f_owner], y1)
            c2 = np.einsum("fkd,fd->fk", basis[f_owner], y2)
            np.add.at(acc, f_owner, np.cross(c1, c2))
            norms = np.linalg.norm(acc, axis=1)
            if np.any(norms < 1e-300):
                raise MeshQualityError("chart normal accumulation vanished")
            frame_n = acc / norms[:, None]
            y4 = _s3_chart(base[nbr_owner], positions[nbr_idx])
            local = np.einsum("pkd,pd->pk", basis[nbr_owner], y4)
        else:
            acc = np.zeros((len(rows), 3))
            np.add.at(acc, f_owner, np.cross(u, w2))
            norms = np.linalg.norm(acc, axis=1)
            if np.any(norms < 1e-300):
                raise MeshQualityError("vertex normal accumulation vanished")
            frame_n = acc / norms[:, None]
            local = positions[nbr_idx] - base[nbr_owner]

        e1, e2 = _tangent_pair(frame_n)
        x = np.einsum("pk,pk->p", local, e1[nbr_owner])
        y = np.einsum("pk,pk->p", local, e2[nbr_owner])
        h = np.einsum("pk,pk->p", local, frame_n[nbr_owner])

        r = np.sqrt(x * x + y * y + h * h)
        scale = np.add.reduceat(r, nbr_ptr[:-1]) / np.diff(nbr_ptr)
        if np.any(scale <= 0.0):
            raise MeshQualityError("coincident vertices in a fit neighborhood")
        s = scale[nbr_owner]
        x, y, h = x / s, y / s, h / s

        cols = np.stack([x, y, 0.5 * x * x, x * y, 0.5 * y * y,
                         x * x * x, x * x * y, x * y * y, y * y * y], axis=1)
        ncol = cols.shape[1]
        if np.any(np.diff(nbr_ptr) < ncol):
            raise MeshQualityError("a fit neighborhood has too few points")
        ata = np.zeros((len(rows), ncol, ncol))
        atb = np.zeros((len(rows), ncol))
        for a in range(ncol):
            atb[:, a] = np.add.reduceat(cols[:, a] * h, nbr_ptr[:-1])
            for b in range(a, ncol):
                vals = np.add.reduceat(cols[:, a] * cols[:, b], nbr_ptr[:-1])
                ata[:, a, b] = vals
                ata[:, b, a] = vals
        try:
            coef = np.linalg.solve(ata, atb[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError as exc:
            raise MeshQualityError("rank-deficient fit neighborhood") from exc

        a1, a2 = coef[:, 0], coef[:, 1]
        hxx = coef[:, 2] / scale
        hxy = coef[:, 3] / scale
        hyy = coef[:, 4] / scale
        wgrad = np.sqrt(1.0 + a1 * a1 + a2 * a2)
        l11, l12, l22 = hxx / wgrad, hxy / wgrad, hyy / wgrad
        g11 = 1.0 + a1 * a1
        g12 = a1 * a2
        g22 = 1.0 + a2 * a2
        detg = g11 * g22 - g12 * g12
        s11 = (g22 * l11 - g12 * l12) / detg
        s22 = (g11 * l22 - g12 * l12) / detg
        mean_h = -0.5 * (s11 + s22)

        if self.ambient == "S3":
            return (1.0 + mean_h ** 2) * weight
        return mean_h ** 2 * weight

    def gradient(self, positions, h=None):
        """Central-difference gradient of the total energy, (V, dim)."""
        if h is None:
            lo, hi = positions.min(axis=0), positions.max(axis=0)
            h = 1e-5 * max(float(np.linalg.norm(hi - lo)), 1e-12)
        grad = np.zeros((self.n, self.dim))
        for members, (rows, ptr) in zip(self.classes, self._class_rows):
            gather = self._gather(rows)
            for axis in range(self.dim):
                sums = []
                for sign in (1.0, -1.0):
                    pts = positions.copy()
                    pts[members, axis] += sign * h
                    if self.ambient == "S3":
                        pts[members] /= np.linalg.norm(pts[members],
                                                       axis=1)[:, None]
                    terms = self.energy_terms(pts, rows, gather)
                    sums.append(np.add.reduceat(terms, ptr[:-1]))
                grad[members, axis] = (sums[0] - sums[1]) / (2.0 * h)
        return grad


def willmore_gradient(mesh):
    """Finite-difference gradient of the bending energy, shape (V, dim)."""
    return _LocalEnergyModel(mesh).gradient(mesh.vertices)


def willmore_relative_gradient(mesh):
    """Scale-free stationarity measure: |grad| * diameter / energy."""
    g = willmore_gradient(mesh)
    value = willmore_energy(mesh, error_estimate=False).value
    return float(np.linalg.norm(g) * mesh.bbox_diameter() / max(abs(value), 1e-30))


# ---------------------------------------------------------------------------
# descent drivers
# ---------------------------------------------------------------------------


def _armijo(evaluate, x, g, e0, alpha0, halvings=40):
    """Backtracking step along -g; returns (new_x, new_e, accepted)."""
    gg = float(np.sum(g * g))
    alpha = alpha0
    for _ in range(halvings):
        cand = x - alpha * g
        try:
            e = evaluate(cand)
        except MeshQualityError:
            e = np.inf
        if e <= e0 - 1e-4 * alpha * gg:
            return cand, e, True
        alpha *= 0.5
    return x, e0, False


def willmore_descent(mesh, steps=20, grad_tol=1e-6, move_scale=0.02):
    """Gradient descent on the bending energy of a closed mesh.

    Each accepted step satisfies an Armijo decrease, so the energy trace is
    strictly nonincreasing. Stops early when the scale-free gradient norm
    drops under grad_tol ('stationary') or when 40 step halvings cannot find
    a decrease ('stagnated'). Returns (mesh, DescentTrace).
    """
    if steps < 1:
        raise ParameterError("steps must be positive")
    model = _LocalEnergyModel(mesh)
    diameter = mesh.bbox_diameter()

    def evaluate(positions):
        if model.ambient == "S3":
            positions = positions / np.linalg.norm(positions, axis=1)[:, None]
        probe = mesh.with_vertices(positions)
        return willmore_energy(probe, error_estimate=False).value

    pos = mesh.vertices.copy()
    energies = [evaluate(pos)]
    gnorms = []
    status = "max_steps"
    for _ in range(steps):
        g = model.gradient(pos)
        gn = float(np.linalg.norm(g))
        gnorms.append(gn)
        if gn * diameter / max(abs(energies[-1]), 1e-30) < grad_tol:
            status = "stationary"
            break
        alpha0 = move_scale * diameter / max(np.linalg.norm(g, axis=1).max(), 1e-30)
        pos, e, ok = _armijo(evaluate, pos, g, energies[-1], alpha0)
        if not ok:
            status = "stagnated"
            break
        if model.ambient == "S3":
            pos = pos / np.linalg.norm(pos, axis=1)[:, None]
        energies.append(e)
    out = mesh.with_vertices(
        pos / np.linalg.norm(pos, axis=1)[:, None] if model.ambient == "S3" else pos)
    return out, DescentTrace(energies=energies, gradient_norms=gnorms,
                             status=status)


def _link_energy(g1, g2):
    return _cross_energy_sum(g1, g2)


def mobius_gradient(link):
    """Central-difference gradient of the cross energy of an R^3 link.

    Moving one vertex only changes the two quadrature rows of its adjacent
    segments, so each difference recomputes two rows rather than the whole
    double sum. Returns (grad1, grad2) matching gamma1 and gamma2.
    """
    if link.dim != 3:
        raise InputError("descent runs on links in R^3; project first")
    h = 1e-6 * link.diameter()

    def mids(g):
        nxt = np.roll(g, -1, axis=0)
        return 0.5 * (g + nxt), np.linalg.norm(nxt - g, axis=1)

    def row_sums(ga, gb, k):
        """Quadrature mass of the two segments of `ga` meeting vertex k,
        against all segments of `gb`."""
        n = len(ga)
        segs = np.array([(k - 1) % n, k])
        a = ga[segs]
        b = ga[(segs + 1) % n]
        mid = 0.5 * (a + b)
        ln = np.linalg.norm(b - a, axis=1)
        mb, lb = mids(gb)
        d2 = np.sum((mid[:, None, :] - mb[None, :, :]) ** 2, axis=2)
        return float(np.sum((ln[:, None] * lb[None, :]) / d2))

    grads = []
    for ga, gb in ((link.gamma1, link.gamma2), (link.gamma2, link.gamma1)):
        g = np.zeros_like(ga)
        for k in range(len(ga)):
            for axis in range(3):
                vals = []
                for sign in (1.0, -1.0):
                    pert = ga.copy()
                    pert[k, axis] += sign * h
                    vals.append(row_sums(pert, gb, k))
                g[k, axis] = (vals[0] - vals[1]) / (2.0 * h)
        grads.append(g)
    return grads[0], grads[1]


def mobius_relative_gradient(link):
    """Scale-free stationarity measure for the cross energy."""
    g1, g2 = mobius_gradient(link)
    gn = float(np.sqrt(np.sum(g1 * g1) + np.sum(g2 * g2)))
    value = _link_energy(link.gamma1, link.gamma2)
    return gn * link.diameter() / max(abs(value), 1e-30)


def mobius_descent(link, steps=30, grad_tol=1e-6, move_scale=0.02,
                   resample_every=50, collision_tol=1e-3):
    """Gradient descent on the cross energy of an R^3 link.

    Every `resample_every` accepted steps the curves are resampled to
    uniform parameter spacing, but only if that does not raise the energy;
    degenerating segment lengths otherwise stall the quadrature. Descent
    stops with status 'collision' if the components run closer than
    collision_tol times the link diameter, since the energy values past
    that point are quadrature artifacts.
    """
    if link.dim != 3:
        raise InputError("descent runs on links in R^3; project first")
    if steps < 1:
        raise ParameterError("steps must be positive")
    g1 = link.gamma1.copy()
    g2 = link.gamma2.copy()
    n1, n2 = len(g1), len(g2)

    def min_gap(a, b):
        d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
        return float(np.sqrt(d2.min()))

    energies = [_link_energy(g1, g2)]
    gnorms = []
    status = "max_steps"
    accepted = 0
    for _ in range(steps):
        diameter = float(np.linalg.norm(
            np.vstack([g1, g2]).max(axis=0) - np.vstack([g1, g2]).min(axis=0)))
        if min_gap(g1, g2) < collision_tol * diameter:
            status = "collision"
            break
        probe = PolyLink(g1, g2)
        d1, d2 = mobius_gradient(probe)
        gn = float(np.sqrt(np.sum(d1 * d1) + np.sum(d2 * d2)))
        gnorms.append(gn)
        if gn * diameter / max(abs(energies[-1]), 1e-30) < grad_tol:
            status = "stationary"
            break
        stacked = np.vstack([g1, g2])
        gstack = np.vstack([d1, d2])
        alpha0 = move_scale * diameter / max(np.linalg.norm(gstack, axis=1).max(),
                                             1e-30)
        new, e, ok = _armijo(lambda x: _link_energy(x[:n1], x[n1:]),
                             stacked, gstack, energies[-1], alpha0)
        if not ok:
            status = "stagnated"
            break
        g1, g2 = new[:n1], new[n1:]
        energies.append(e)
        accepted += 1
        if accepted % resample_every == 0:
            r1 = _resample_closed(g1, n1)
            r2 = _resample_closed(g2, n2)
            e_res = _link_energy(r1, r2)
            if e_res <= energies[-1]:
                g1, g2 = r1, r2
                energies.append(e_res)
    return PolyLink(g1, g2), DescentTrace(energies=energies,
                                          gradient_norms=gnorms, status=status)


# ---------------------------------------------------------------------------
# tube radius sweep
# ---------------------------------------------------------------------------


def tube_family_sweep(radii=None, resolution=96):
    """Bending energy along the family of tubes of unit radius around
    circles of the given radii; returns the grid, the energies, and the
    minimizing entry."""
    if radii is None:
        radii = np.linspace(1.1, 3.0, 100)
    radii = np.asarray(radii, dtype=np.float64)
    if radii.ndim != 1 or len(radii) < 2:
        raise ParameterError("need a 1-d grid of at least two radii")
    if np.any(radii <= 1.0):
        raise ParameterError("tube of unit radius needs ring radius > 1")
    energies = np.empty(len(radii))
    for i, radius in enumerate(radii):
        mesh = tube_torus(big_radius=float(radius), tube_radius=1.0,
                          resolution=resolution)
        energies[i] = willmore_energy(mesh, error_estimate=False).value
    best = int(np.argmin(energies))
    return SweepReport(radii=radii, energies=energies,
                       min_radius=float(radii[best]),
                       min_energy=float(energies[best]))
